#pragma once

// Link-availability, throughput and latency metrics over physical snapshots.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "csdvn/constellation.hpp"
#include "csdvn/flow.hpp"
#include "csdvn/isl_topology.hpp"

namespace csdvn {

struct WeightedLink {
  int a = 0;  // satellite_index
  int b = 0;
  LinkKind kind = LinkKind::v_isl;
  double length = 0.0;    // m
  double delay = 0.0;     // s
  double capacity = 0.0;  // Gbps, each direction
};

struct WeightedNetSnapshot {
  int node_count = 0;
  double t = 0.0;
  std::vector<GeoPoint> subpoints;  // by satellite_index
  std::vector<WeightedLink> links;  // active links only

  Adjacency delay_adjacency() const;
};

WeightedNetSnapshot weight_snapshot(const ConstellationConfig& config, const std::vector<IslEdge>& edges, double t,
                                    double isl_capacity = 1.0);

/// Latitude/longitude box in degrees; lon_min <= lon_max, no antimeridian wrap.
struct GeoBox {
  double lat_min = 0.0;
  double lat_max = 0.0;
  double lon_min = 0.0;
  double lon_max = 0.0;

  bool contains(const GeoPoint& p) const;
  bool overlaps(const GeoBox& o) const;
};

struct FlowScenario {
  GeoBox source{20.0, 50.0, -130.0, -60.0};
  GeoBox sink{20.0, 50.0, 0.0, 70.0};
  double isl_capacity = 1.0;  // Gbps; ground links are unbounded
};

struct FlowResult {
  double throughput = 0.0;  // Gbps
  double cost = 0.0;        // Gbps * s
  int source_satellites = 0;
  int sink_satellites = 0;
  std::string diagnostic;
  std::vector<double> arc_flow;  // per link: flow a->b minus flow b->a
};

/// Super-source feeds every satellite over the source box, every satellite
/// over the sink box drains to the super-sink, both without limit. A
/// satellite over both boxes is attached to the source only.
FlowResult max_flow_throughput(const WeightedNetSnapshot& snapshot, const FlowScenario& scenario);

/// Evenly spaced instants t_i = i*T/count, i = 0..count-1.
std::vector<double> snapshot_times(const ConstellationConfig& config, int count);

/// Mean throughput over `snapshots` instants, row-synchronized links on the
/// division matched to the mode.
double mean_throughput(const ConstellationConfig& config, IslMode mode, const FlowScenario& scenario, int snapshots);

/// Uniform index in [0, n) from raw 64-bit engine output by rejection, so the
/// stream is identical on every platform.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n);

/// `count` ordered pairs of distinct satellites.
std::vector<std::pair<int, int>> draw_pairs(int satellites, int count, std::uint64_t seed);

struct LatencyResult {
  double mean_ms = 0.0;
  long reachable = 0;
  long unreachable = 0;
  double unreachable_fraction() const {
    const long total = reachable + unreachable;
    return total == 0 ? 0.0 : static_cast<double>(unreachable) / static_cast<double>(total);
  }
};

LatencyResult avg_latency(const ConstellationConfig& config, IslMode mode, int pairs, std::uint64_t seed,
                          int snapshots);

struct SweepRow {
  int phasing = 0;
  double polar_deg = 0.0;
  IslMode mode = IslMode::optimized;
  long n_hisl = 0;
  std::optional<double> throughput_gbps;
  std::optional<double> avg_latency_ms;
  double unreachable_fraction = 0.0;  // latency pairs left out of the mean
  std::string error;
};

struct SweepPlan {
  ConstellationConfig base;
  int f_min = 0;
  int f_max = 0;
  std::vector<double> polar_thresholds;  // rad
  std::vector<IslMode> modes{IslMode::conventional, IslMode::optimized};
  bool with_throughput = false;
  bool with_latency = false;
  FlowScenario scenario;
  int flow_snapshots = 16;
  int latency_pairs = 10000;
  int latency_snapshots = 16;
  std::uint64_t seed = 0;
};

/// One row per (F, threshold, mode), in that nesting order. A failing point
/// becomes an error row and the sweep continues.
std::vector<SweepRow> sweep(const SweepPlan& plan);

}  // namespace csdvn
