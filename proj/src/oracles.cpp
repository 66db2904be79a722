#include "csdvn/oracles.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

#include "csdvn/network_analysis.hpp"

namespace csdvn {

double min_cut_enumeration(int nodes, const std::vector<CapacityArc>& arcs, int source, int sink) {
  if (nodes > 20) throw std::invalid_argument("cut enumeration limited to 20 nodes");
  std::vector<int> free_nodes;
  for (int v = 0; v < nodes; ++v)
    if (v != source && v != sink) free_nodes.push_back(v);
  double best = std::numeric_limits<double>::infinity();
  const std::uint32_t subsets = 1u << free_nodes.size();
  std::vector<char> on_source(static_cast<std::size_t>(nodes));
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    std::fill(on_source.begin(), on_source.end(), 0);
    on_source[static_cast<std::size_t>(source)] = 1;
    for (std::size_t i = 0; i < free_nodes.size(); ++i)
      if (mask & (1u << i)) on_source[static_cast<std::size_t>(free_nodes[i])] = 1;
    double cut = 0.0;
    for (const auto& a : arcs)
      if (on_source[static_cast<std::size_t>(a.from)] && !on_source[static_cast<std::size_t>(a.to)]) cut += a.capacity;
    best = std::min(best, cut);
  }
  return best;
}

std::vector<double> shortest_paths_enumeration(const Adjacency& adj, int source) {
  if (adj.size() > 12) throw std::invalid_argument("path enumeration limited to 12 nodes");
  std::vector<double> best(adj.size(), std::numeric_limits<double>::infinity());
  std::vector<char> on_path(adj.size(), 0);
  std::function<void(int, double)> walk = [&](int u, double length) {
    best[static_cast<std::size_t>(u)] = std::min(best[static_cast<std::size_t>(u)], length);
    on_path[static_cast<std::size_t>(u)] = 1;
    for (const auto& arc : adj[static_cast<std::size_t>(u)])
      if (!on_path[static_cast<std::size_t>(arc.to)]) walk(arc.to, length + arc.weight);
    on_path[static_cast<std::size_t>(u)] = 0;
  };
  walk(source, 0.0);
  return best;
}

RegionBoundaries region_boundaries_search(int n2, double polar_deg, double spread_deg) {
  constexpr double tol = 1e-9;
  auto fits = [&](int v, double limit_deg) { return v * 360.0 + spread_deg * n2 <= limit_deg * n2 + tol; };
  RegionBoundaries b{0, 0, 0};
  for (int v = 0; v <= n2; ++v)
    if (fits(v, 2.0 * polar_deg)) b.va = v;
  for (int v = n2 + 1; v >= 1; --v)
    if ((v - 1) * 360.0 >= 180.0 * n2 - tol) b.vb = v;
  b.vc = b.vb - 1;
  for (int v = b.vb; v <= n2; ++v)
    if (fits(v, 180.0 + 2.0 * polar_deg)) b.vc = v;
  return b;
}

std::vector<CapacityArc> random_flow_instance(int nodes, int arcs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CapacityArc> out;
  while (static_cast<int>(out.size()) < arcs) {
    const int a = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(nodes)));
    const int b = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(nodes)));
    if (a == b) continue;
    out.push_back({a, b, static_cast<double>(1 + uniform_index(rng, 9))});
  }
  return out;
}

Adjacency random_path_instance(int nodes, int edges, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Adjacency adj(static_cast<std::size_t>(nodes));
  for (int i = 0; i < edges;) {
    const int a = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(nodes)));
    const int b = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(nodes)));
    if (a == b) continue;
    const double w = static_cast<double>(1 + uniform_index(rng, 20));
    adj[static_cast<std::size_t>(a)].push_back({b, w});
    adj[static_cast<std::size_t>(b)].push_back({a, w});
    ++i;
  }
  return adj;
}

}  // namespace csdvn
