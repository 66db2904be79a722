#include "csdvn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "csdvn/io.hpp"
#include "csdvn/isl_topology.hpp"
#include "csdvn/network_analysis.hpp"
#include "csdvn/oracles.hpp"
#include "csdvn/virtual_graph.hpp"

namespace csdvn {

namespace {

std::string str(const RegionBoundaries& b) {
  return "(" + std::to_string(b.va) + "," + std::to_string(b.vb) + "," + std::to_string(b.vc) + ")";
}

template <typename... Parts>
std::string params(const Parts&... parts) {
  std::ostringstream out;
  ((out << parts), ...);
  return out.str();
}

void division_suite(std::vector<VerifyCheck>& checks) {
  for (int n2 : {12, 24, 36, 66}) {
    for (double polar : {60.0, 64.0, 70.0, 80.0, 90.0}) {
      const auto closed = region_boundaries(n2, deg2rad(polar));
      const auto searched = region_boundaries_search(n2, polar, 0.0);
      checks.push_back({"division", "unphased_boundaries", params("n2=", n2, " polar=", polar), closed == searched,
                        str(closed) + " vs " + str(searched)});
      for (int n1 : {2, 3, 4, 6, 9, 12, 18}) {
        for (int f = 1; f < n2 && f <= n1; ++f) {
          if (n1 % f != 0) continue;
          const int k = n1 / f;
          const auto phased = region_boundaries_closed_form(n2, deg2rad(polar), k);
          const double spread_deg = (k - 1) * 360.0 * f / (static_cast<double>(n1) * n2);
          const auto found = region_boundaries_search(n2, polar, spread_deg);
          checks.push_back({"division", "phased_boundaries", params("n1=", n1, " n2=", n2, " F=", f, " polar=", polar),
                            phased == found, str(phased) + " vs " + str(found)});
        }
      }
    }
  }

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < 10; ++i) {
    const double period = 3000.0 + static_cast<double>(uniform_index(rng, 9000));
    const int n2 = 3 + static_cast<int>(uniform_index(rng, 60));
    const double got = grd_switch_interval(period, n2);
    checks.push_back({"division", "switch_interval", params("T=", period, " n2=", n2), got == period / n2,
                      format_double(got)});
  }

  for (int f : {0, 2, 5}) {
    ConstellationConfig c;
    c.phasing = f;
    const auto division = DivisionConfig::matched(c, IslMode::optimized);
    const auto rows = division_table(c, division, mode_boundaries(c, IslMode::optimized));
    std::stringstream buffer;
    write_division_csv(buffer, rows);
    const auto back = read_division_csv(buffer);
    bool same = back.size() == rows.size();
    for (std::size_t i = 0; same && i < rows.size(); ++i)
      same = back[i].address == rows[i].address && back[i].region == rows[i].region && back[i].bounds == rows[i].bounds;
    checks.push_back({"division", "csv_round_trip", params("F=", f), same, std::to_string(rows.size()) + " rows"});

    std::vector<VirtualAddress> addresses;
    for (const auto& s : propagate_all(c, 0.0)) addresses.push_back(csd_map(s, c, division));
    std::sort(addresses.begin(), addresses.end());
    const bool unique = std::adjacent_find(addresses.begin(), addresses.end()) == addresses.end();
    checks.push_back({"division", "csd_addresses_unique", params("F=", f), unique, ""});
  }
}

void theorem1_suite(std::vector<VerifyCheck>& checks) {
  for (int n1 : {4, 6, 9, 12}) {
    const int n2 = 2 * n1;
    for (int f = 0; f < n2; ++f) {
      const auto brute = theorem1_bruteforce(n1, n2, f);
      const long analytic = optimized_spread_quanta(n1, f);
      bool ok = brute.min_spread_quanta == analytic;
      std::string detail = "brute=" + std::to_string(brute.min_spread_quanta) + " analytic=" + std::to_string(analytic);
      if (f > 0 && n1 % f == 0) {
        const long closed = static_cast<long>(n1 / f - 1) * f;
        ok = ok && brute.min_spread_quanta == closed;
        detail += " (K-1)F=" + std::to_string(closed);
      }
      const long conventional = static_cast<long>(n1 - 1) * f;
      ok = ok && brute.min_spread_quanta <= conventional;
      checks.push_back({"theorem1", "min_spread", params("n1=", n1, " n2=", n2, " F=", f), ok, detail});
    }
  }
}

void staticness_suite(std::vector<VerifyCheck>& checks) {
  ConstellationConfig c;
  c.polar_threshold = deg2rad(70.0);
  for (int f : {0, 2, 6}) {
    c.phasing = f;
    const auto r = staticness_report(c, VnMethod::csd, IslMode::optimized, c.period(), 720);
    checks.push_back({"staticness", "csd_zero_events", params("F=", f), r.event_count == 0 && r.reference_mismatch_samples == 0,
                      std::to_string(r.event_count) + " events over " + std::to_string(r.samples) + " samples"});
  }
  c.phasing = 0;
  const auto grd2 = staticness_report(c, VnMethod::grd2, IslMode::conventional, kSiderealDay, 720);
  std::vector<int> columns;
  for (const auto& [t, col] : grd2.seam_column_history) columns.push_back(col);
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
  const int drift = grd2.events_by_cause.at(EventCause::seam_drift);
  checks.push_back({"staticness", "grd2_seam_drift", "F=0", static_cast<int>(columns.size()) == c.n1 && drift >= c.n1,
                    std::to_string(columns.size()) + " columns, " + std::to_string(drift) + " SEAM_DRIFT"});
  const auto grd1 = staticness_report(c, VnMethod::grd1, IslMode::conventional, kSiderealDay, 720);
  const int lost = grd1.events_by_cause.at(EventCause::coverage_loss);
  checks.push_back({"staticness", "grd1_coverage_loss", "F=0", lost >= 1, std::to_string(lost) + " COVERAGE_LOSS"});
}

long count_formula(int n1, int n2, const RegionBoundaries& b, bool faulty) {
  if (!faulty) return hisl_count_analytic(n1, n2, b).n_hisl;
  return static_cast<long>(n1 - 1) * (std::max(0, b.va) + std::max(0, b.vc - b.vb));
}

void counts_suite(std::vector<VerifyCheck>& checks, const VerifyOptions& options) {
  for (int n1 : {6, 12, 18})
    for (int n2 : {12, 24, 36})
      for (double polar : {60.0, 64.0, 70.0, 80.0})
        for (int f = 0; f <= 5; ++f)
          for (auto mode : {IslMode::conventional, IslMode::optimized}) {
            ConstellationConfig c;
            c.n1 = n1;
            c.n2 = n2;
            c.phasing = f;
            c.polar_threshold = deg2rad(polar);
            const auto division = DivisionConfig::matched(c, mode);
            const long analytic = count_formula(n1, n2, mode_boundaries(c, mode), options.inject_count_fault);
            const auto epochs = staticness_times(c, division, c.period() / n2, 2, true);
            long mismatched = 0, geometric = 0;
            for (double t : epochs) {
              geometric = count_active(snapshot_edges(c, mode, division, t), LinkKind::h_isl);
              if (geometric != analytic) ++mismatched;
            }
            checks.push_back({"counts", "hisl_analytic_vs_geometric",
                              params("n1=", n1, " n2=", n2, " polar=", polar, " F=", f, " mode=", to_string(mode)),
                              mismatched == 0,
                              "analytic=" + std::to_string(analytic) + " geometric=" + std::to_string(geometric)});
          }
}

void flow_suite(std::vector<VerifyCheck>& checks) {
  for (int i = 0; i < 20; ++i) {
    const int nodes = 4 + i % 9;
    const auto arcs = random_flow_instance(nodes, 2 * nodes + i % 5, 1000 + static_cast<std::uint64_t>(i));
    MinCostFlow<double, double> net(nodes);
    for (const auto& a : arcs) net.add_arc(a.from, a.to, a.capacity, 1.0);
    const double flow = net.solve(0, nodes - 1).flow;
    const double cut = min_cut_enumeration(nodes, arcs, 0, nodes - 1);
    checks.push_back({"flow", "max_flow_equals_min_cut", params("nodes=", nodes, " instance=", i), flow == cut,
                      "flow=" + format_double(flow) + " cut=" + format_double(cut)});
  }
  for (int i = 0; i < 20; ++i) {
    const int nodes = 3 + i % 8;
    const auto adj = random_path_instance(nodes, nodes + i % 7, 2000 + static_cast<std::uint64_t>(i));
    const bool same = shortest_distances(adj, 0) == shortest_paths_enumeration(adj, 0);
    checks.push_back({"flow", "dijkstra_equals_enumeration", params("nodes=", nodes, " instance=", i), same, ""});
  }
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> suites{"division", "theorem1", "staticness", "counts", "flow"};
  return suites;
}

std::vector<VerifyCheck> run_verify(const std::string& suite, const VerifyOptions& options) {
  std::vector<VerifyCheck> checks;
  const bool all = suite == "all";
  if (!all && std::find(verify_suites().begin(), verify_suites().end(), suite) == verify_suites().end())
    throw ConfigError("suite", "unknown suite '" + suite + "'");
  if (all || suite == "division") division_suite(checks);
  if (all || suite == "theorem1") theorem1_suite(checks);
  if (all || suite == "counts") counts_suite(checks, options);
  if (all || suite == "staticness") staticness_suite(checks);
  if (all || suite == "flow") flow_suite(checks);
  return checks;
}

}  // namespace csdvn
