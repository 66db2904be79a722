#include "csdvn/network_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "csdvn/vn_division.hpp"

namespace csdvn {

std::vector<double> shortest_distances(const Adjacency& adj, int source) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(adj.size(), inf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[static_cast<std::size_t>(source)] = 0.0;
  pq.push({0.0, source});
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    for (const auto& arc : adj[static_cast<std::size_t>(u)]) {
      const double nd = d + arc.weight;
      if (nd < dist[static_cast<std::size_t>(arc.to)]) {
        dist[static_cast<std::size_t>(arc.to)] = nd;
        pq.push({nd, arc.to});
      }
    }
  }
  return dist;
}

Adjacency WeightedNetSnapshot::delay_adjacency() const {
  Adjacency adj(static_cast<std::size_t>(node_count));
  for (const auto& l : links) {
    adj[static_cast<std::size_t>(l.a)].push_back({l.b, l.delay});
    adj[static_cast<std::size_t>(l.b)].push_back({l.a, l.delay});
  }
  return adj;
}

WeightedNetSnapshot weight_snapshot(const ConstellationConfig& config, const std::vector<IslEdge>& edges, double t,
                                    double isl_capacity) {
  const auto states = propagate_all(config, t);
  WeightedNetSnapshot snap;
  snap.node_count = config.satellite_count();
  snap.t = t;
  snap.subpoints.reserve(states.size());
  for (const auto& s : states) snap.subpoints.push_back(s.subpoint());
  for (const auto& e : edges) {
    if (!e.active) continue;
    const int a = satellite_index(e.a, config.n2);
    const int b = satellite_index(e.b, config.n2);
    const double length =
        (states[static_cast<std::size_t>(a)].position - states[static_cast<std::size_t>(b)].position).norm();
    snap.links.push_back({a, b, e.kind, length, length / kSpeedOfLight, isl_capacity});
  }
  return snap;
}

bool GeoBox::contains(const GeoPoint& p) const {
  const double lat = rad2deg(p.lat), lon = rad2deg(p.lon);
  return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
}

bool GeoBox::overlaps(const GeoBox& o) const {
  return lat_min <= o.lat_max && o.lat_min <= lat_max && lon_min <= o.lon_max && o.lon_min <= lon_max;
}

FlowResult max_flow_throughput(const WeightedNetSnapshot& snapshot, const FlowScenario& scenario) {
  FlowResult result;
  const int n = snapshot.node_count;
  const int source = n, sink = n + 1;
  MinCostFlow<double, double> net(n + 2);

  // Finite stand-in for an unbounded ground link: no cut can exceed it.
  const double unbounded = scenario.isl_capacity * 2.0 * static_cast<double>(snapshot.links.size() + 1);
  for (int i = 0; i < n; ++i) {
    const auto& p = snapshot.subpoints[static_cast<std::size_t>(i)];
    if (scenario.source.contains(p)) {
      net.add_arc(source, i, unbounded, 0.0);
      ++result.source_satellites;
    } else if (scenario.sink.contains(p)) {
      net.add_arc(i, sink, unbounded, 0.0);
      ++result.sink_satellites;
    }
  }
  if (result.source_satellites == 0 || result.sink_satellites == 0) {
    result.diagnostic = "no satellite covers the " + std::string(result.source_satellites == 0 ? "source" : "sink") +
                        " region";
    result.arc_flow.assign(snapshot.links.size(), 0.0);
    return result;
  }

  std::vector<std::pair<int, int>> arc_ids;
  arc_ids.reserve(snapshot.links.size());
  for (const auto& l : snapshot.links) {
    const int fwd = net.add_arc(l.a, l.b, l.capacity, l.delay);
    const int bwd = net.add_arc(l.b, l.a, l.capacity, l.delay);
    arc_ids.emplace_back(fwd, bwd);
  }
  const auto r = net.solve(source, sink, 1e-12);
  result.throughput = r.flow;
  result.cost = r.cost;
  for (const auto& [fwd, bwd] : arc_ids) result.arc_flow.push_back(net.arc(fwd).flow - net.arc(bwd).flow);
  return result;
}

std::vector<double> snapshot_times(const ConstellationConfig& config, int count) {
  std::vector<double> times;
  const double period = config.period();
  for (int i = 0; i < count; ++i) times.push_back(period * i / count);
  return times;
}

double mean_throughput(const ConstellationConfig& config, IslMode mode, const FlowScenario& scenario, int snapshots) {
  const auto division = DivisionConfig::matched(config, mode);
  double sum = 0.0;
  const auto times = snapshot_times(config, snapshots);
  for (double t : times) {
    const auto edges = snapshot_edges(config, mode, division, t);
    sum += max_flow_throughput(weight_snapshot(config, edges, t, scenario.isl_capacity), scenario).throughput;
  }
  return sum / static_cast<double>(times.size());
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

std::vector<std::pair<int, int>> draw_pairs(int satellites, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  const auto n = static_cast<std::uint64_t>(satellites);
  while (static_cast<int>(pairs.size()) < count) {
    const auto a = static_cast<int>(uniform_index(rng, n));
    const auto b = static_cast<int>(uniform_index(rng, n));
    if (a != b) pairs.emplace_back(a, b);
  }
  return pairs;
}

LatencyResult avg_latency(const ConstellationConfig& config, IslMode mode, int pairs, std::uint64_t seed,
                          int snapshots) {
  if (pairs < 1) throw ConfigError("pairs", "need at least one pair");
  const auto drawn = draw_pairs(config.satellite_count(), pairs, seed);
  std::map<int, std::vector<int>> by_source;
  for (const auto& [a, b] : drawn) by_source[a].push_back(b);

  const auto division = DivisionConfig::matched(config, mode);
  LatencyResult out;
  double sum = 0.0;
  for (double t : snapshot_times(config, snapshots)) {
    const auto snap = weight_snapshot(config, snapshot_edges(config, mode, division, t), t);
    const auto adj = snap.delay_adjacency();
    for (const auto& [src, dsts] : by_source) {
      const auto dist = shortest_distances(adj, src);
      for (int d : dsts) {
        const double v = dist[static_cast<std::size_t>(d)];
        if (std::isinf(v)) {
          ++out.unreachable;
        } else {
          sum += v;
          ++out.reachable;
        }
      }
    }
  }
  out.mean_ms = out.reachable == 0 ? 0.0 : sum / static_cast<double>(out.reachable) * 1e3;
  return out;
}

std::vector<SweepRow> sweep(const SweepPlan& plan) {
  if (plan.f_max < plan.f_min || plan.polar_thresholds.empty() || plan.modes.empty())
    throw ConfigError("sweep", "empty sweep range");
  std::vector<SweepRow> rows;
  for (int f = plan.f_min; f <= plan.f_max; ++f) {
    for (double polar : plan.polar_thresholds) {
      for (IslMode mode : plan.modes) {
        SweepRow row;
        row.phasing = f;
        row.polar_deg = rad2deg(polar);
        row.mode = mode;
        try {
          ConstellationConfig c = plan.base;
          c.phasing = f;
          c.polar_threshold = polar;
          c.phase0.reset();
          c.validate();
          row.n_hisl = hisl_count_analytic(c.n1, c.n2, mode_boundaries(c, mode)).n_hisl;
          if (plan.with_throughput) row.throughput_gbps = mean_throughput(c, mode, plan.scenario, plan.flow_snapshots);
          if (plan.with_latency) {
            const auto latency = avg_latency(c, mode, plan.latency_pairs, plan.seed, plan.latency_snapshots);
            row.avg_latency_ms = latency.mean_ms;
            row.unreachable_fraction = latency.unreachable_fraction();
          }
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace csdvn
