#pragma once

// Brute-force reference computations for small graphs.

#include <cstdint>
#include <vector>

#include "csdvn/flow.hpp"
#include "csdvn/vn_division.hpp"

namespace csdvn {

struct CapacityArc {
  int from = 0;
  int to = 0;
  double capacity = 0.0;
};

/// Minimum s-t cut by enumerating all 2^(n-2) vertex bipartitions. n <= 20.
double min_cut_enumeration(int nodes, const std::vector<CapacityArc>& arcs, int source, int sink);

/// Shortest simple-path length from source to every node by depth-first
/// enumeration of all simple paths. n <= 12.
std::vector<double> shortest_paths_enumeration(const Adjacency& adj, int source);

/// Region boundaries by scanning every row index against the polar
/// constraints: largest vA with vA*wf + spread <= 2*PhiP, smallest vB with
/// (vB-1)*wf >= 180, largest vC <= n2 with vC*wf + spread <= 180 + 2*PhiP.
/// Degrees throughout. Empty bands are reported as vA = 0 and vC = vB - 1.
RegionBoundaries region_boundaries_search(int n2, double polar_deg, double spread_deg);

/// Random directed instance with integer capacities in [1, 9].
std::vector<CapacityArc> random_flow_instance(int nodes, int arcs, std::uint64_t seed);

/// Random undirected instance with integer weights in [1, 20].
Adjacency random_path_instance(int nodes, int edges, std::uint64_t seed);

}  // namespace csdvn
