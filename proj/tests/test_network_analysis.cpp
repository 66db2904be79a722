#include "doctest.h"

#include <cmath>
#include <map>

#include "csdvn/network_analysis.hpp"
#include "csdvn/oracles.hpp"

using namespace csdvn;

namespace {

ConstellationConfig at_7000km(int phasing = 0) {
  ConstellationConfig c;
  c.altitude = 629e3;
  c.phasing = phasing;
  return c;
}

WeightedNetSnapshot hand_snapshot(const std::vector<GeoPoint>& subpoints, const std::vector<std::pair<int, int>>& links) {
  WeightedNetSnapshot s;
  s.node_count = static_cast<int>(subpoints.size());
  s.subpoints = subpoints;
  for (const auto& [a, b] : links) s.links.push_back({a, b, LinkKind::h_isl, 1e6, 1e6 / kSpeedOfLight, 1.0});
  return s;
}

GeoPoint deg(double lat, double lon) { return {deg2rad(lat), deg2rad(lon)}; }

}  // namespace

TEST_CASE("link lengths are chords") {
  auto c = at_7000km();
  c.phase0 = 0.0;
  const auto edges = snapshot_edges(c, IslMode::conventional, DivisionConfig::unphased(c), 0.0);
  const auto snap = weight_snapshot(c, edges, 0.0);
  const double chord = 2 * 7000e3 * std::sin(deg2rad(5.0));
  CHECK(chord / 1e3 == doctest::Approx(1220.1804));
  double equatorial_h = 0.0, shortest_h = 1e12;
  for (const auto& l : snap.links) {
    CHECK(l.delay == doctest::Approx(l.length / kSpeedOfLight));
    CHECK(l.delay > 0.0);
    if (l.kind == LinkKind::v_isl) CHECK(l.length == doctest::Approx(chord));
    if (l.kind == LinkKind::h_isl) {
      if (l.a == satellite_index({1, 1}, 36)) equatorial_h = l.length;
      shortest_h = std::min(shortest_h, l.length);
    }
  }
  CHECK(equatorial_h == doctest::Approx(chord));
  CHECK(shortest_h < equatorial_h);
}

TEST_CASE("min-cost flow on a hand-built network") {
  // 0 -> {1, 2} -> 3 with a cheap narrow path and a dear wide one.
  MinCostFlow<long, long> net(4);
  net.add_arc(0, 1, 2, 1);
  net.add_arc(0, 2, 5, 4);
  net.add_arc(1, 3, 3, 1);
  net.add_arc(2, 3, 2, 1);
  net.add_arc(1, 2, 1, 1);
  const auto r = net.solve(0, 3);
  CHECK(r.flow == 4);
  CHECK(r.cost == 2 * 2 + 2 * 5);
}

TEST_CASE("max flow equals the enumerated min cut") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int nodes = 4 + static_cast<int>(seed % 9);
    const auto arcs = random_flow_instance(nodes, 3 * nodes, seed);
    MinCostFlow<double, double> net(nodes);
    for (const auto& a : arcs) net.add_arc(a.from, a.to, a.capacity, 1.0);
    CHECK(net.solve(0, nodes - 1).flow == min_cut_enumeration(nodes, arcs, 0, nodes - 1));
  }
}

TEST_CASE("Dijkstra equals path enumeration") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int nodes = 3 + static_cast<int>(seed % 8);
    const auto adj = random_path_instance(nodes, nodes + 2, 100 + seed);
    CHECK(shortest_distances(adj, 0) == shortest_paths_enumeration(adj, 0));
  }
  Adjacency line(3);
  line[0].push_back({1, 2.0});
  line[1].push_back({0, 2.0});
  const auto d = shortest_distances(line, 0);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == 2.0);
  CHECK(std::isinf(d[2]));
}

TEST_CASE("throughput scenario wiring") {
  const FlowScenario scenario;
  SUBCASE("two disjoint paths of unit capacity") {
    const auto s = hand_snapshot({deg(30, -100), deg(40, -20), deg(45, -20), deg(30, 30)},
                                 {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
    const auto r = max_flow_throughput(s, scenario);
    CHECK(r.throughput == 2.0);
    CHECK(r.source_satellites == 1);
    CHECK(r.sink_satellites == 1);
    // Conservation at the relays.
    CHECK(r.arc_flow[0] == doctest::Approx(r.arc_flow[1]));
    CHECK(r.arc_flow[2] == doctest::Approx(r.arc_flow[3]));
  }
  SUBCASE("no bridge between the boxes") {
    const auto s = hand_snapshot({deg(30, -100), deg(30, -90), deg(30, 30)}, {{0, 1}});
    CHECK(max_flow_throughput(s, scenario).throughput == 0.0);
  }
  SUBCASE("empty coverage yields zero with a diagnostic") {
    const auto s = hand_snapshot({deg(-30, -100), deg(30, 30)}, {{0, 1}});
    const auto r = max_flow_throughput(s, scenario);
    CHECK(r.throughput == 0.0);
    CHECK_FALSE(r.diagnostic.empty());
  }
  SUBCASE("a satellite over both boxes is a source only") {
    FlowScenario wide;
    wide.source = {20, 50, -130, 10};
    wide.sink = {20, 50, 0, 70};
    const auto s = hand_snapshot({deg(30, 5), deg(30, 40)}, {{0, 1}});
    const auto r = max_flow_throughput(s, wide);
    CHECK(r.source_satellites == 1);
    CHECK(r.sink_satellites == 1);
    CHECK(r.throughput == 1.0);
  }
}

TEST_CASE("flow on a real snapshot respects capacities and conservation") {
  ConstellationConfig c;
  c.phasing = 2;
  const auto d = DivisionConfig::matched(c, IslMode::optimized);
  const auto snap = weight_snapshot(c, snapshot_edges(c, IslMode::optimized, d, 500.0), 500.0);
  const FlowScenario scenario;
  const auto r = max_flow_throughput(snap, scenario);
  CHECK(r.throughput > 0.0);
  std::map<int, double> net_out;
  for (std::size_t i = 0; i < snap.links.size(); ++i) {
    CHECK(std::abs(r.arc_flow[i]) <= snap.links[i].capacity + 1e-9);
    net_out[snap.links[i].a] += r.arc_flow[i];
    net_out[snap.links[i].b] -= r.arc_flow[i];
  }
  double injected = 0.0;
  for (const auto& [node, flow] : net_out) {
    const auto& p = snap.subpoints[static_cast<std::size_t>(node)];
    if (scenario.source.contains(p)) injected += flow;
    else if (!scenario.sink.contains(p)) CHECK(flow == doctest::Approx(0.0).epsilon(1e-9));
  }
  CHECK(injected == doctest::Approx(r.throughput));
}

TEST_CASE("portable random stream") {
  std::mt19937_64 rng;  // default seed 5489
  CHECK(uniform_index(rng, 10) == 0);  // first output 14514284786278117030
  const auto a = draw_pairs(648, 500, 42);
  const auto b = draw_pairs(648, 500, 42);
  CHECK(a == b);
  CHECK(draw_pairs(648, 500, 43) != a);
  for (const auto& [x, y] : a) {
    CHECK(x != y);
    CHECK(x >= 0);
    CHECK(y < 648);
  }
}

TEST_CASE("latency of an adjacent same-plane pair is one V-ISL hop") {
  const auto c = at_7000km();
  const auto snap = weight_snapshot(c, snapshot_edges(c, IslMode::conventional, DivisionConfig::unphased(c), 0.0), 0.0);
  const auto dist = shortest_distances(snap.delay_adjacency(), 0);
  CHECK(dist[0] == 0.0);
  CHECK(dist[1] == doctest::Approx(2 * 7000e3 * std::sin(deg2rad(5.0)) / kSpeedOfLight));
}

TEST_CASE("average latency is deterministic and counts unreachable pairs") {
  ConstellationConfig c;
  const auto a = avg_latency(c, IslMode::conventional, 200, 7, 2);
  const auto b = avg_latency(c, IslMode::conventional, 200, 7, 2);
  CHECK(a.mean_ms == b.mean_ms);
  CHECK(a.reachable == 400);
  CHECK(a.unreachable_fraction() == 0.0);
  c.phasing = 14;
  const auto cut = avg_latency(c, IslMode::conventional, 200, 7, 2);
  CHECK(cut.unreachable > 0);
  CHECK_THROWS_AS(avg_latency(c, IslMode::conventional, 0, 7, 2), ConfigError);
}

TEST_CASE("sweep rows and error rows") {
  SweepPlan plan;
  plan.f_min = 0;
  plan.f_max = 36;
  plan.polar_thresholds = {deg2rad(70.0), deg2rad(64.0)};
  const auto rows = sweep(plan);
  REQUIRE(rows.size() == 37 * 2 * 2);
  std::map<std::tuple<int, int, IslMode>, long> n;
  for (const auto& r : rows) {
    if (r.phasing == 36) {
      CHECK_FALSE(r.error.empty());
      continue;
    }
    CHECK(r.error.empty());
    n[{r.phasing, static_cast<int>(std::lround(r.polar_deg)), r.mode}] = r.n_hisl;
  }
  CHECK(n[{0, 70, IslMode::conventional}] == 476);
  CHECK(n[{2, 70, IslMode::conventional}] == 408);
  CHECK(n[{14, 70, IslMode::conventional}] == 0);
  for (int f : {1, 2, 3, 6, 9}) CHECK(n[{f, 70, IslMode::optimized}] == 442);
  for (int f : {6, 9, 12}) {
    CHECK(n[{f, 64, IslMode::optimized}] == 408);
    CHECK(n[{f - 1, 64, IslMode::optimized}] < 408);
    CHECK(n[{f + 1, 64, IslMode::optimized}] < 408);
  }
  for (int f = 1; f < 36; ++f) CHECK(n[{f, 70, IslMode::optimized}] >= n[{f, 70, IslMode::conventional}]);
  CHECK_THROWS_AS(sweep(SweepPlan{}), ConfigError);
}
