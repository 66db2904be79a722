#include "csdvn/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "csdvn/io.hpp"
#include "csdvn/isl_topology.hpp"
#include "csdvn/network_analysis.hpp"
#include "csdvn/verify.hpp"
#include "csdvn/virtual_graph.hpp"

namespace csdvn {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

struct ConfigFlags {
  std::string file;
  std::optional<int> n1, n2, phasing;
  std::optional<double> altitude_km, inclination_deg, raan0_deg, phase0_deg, period_s;
  std::vector<double> polar_deg;

  void attach(CLI::App& app) {
    app.add_option("--config", file, "Key/value constellation config file");
    app.add_option("--n1", n1, "Orbit planes");
    app.add_option("--n2", n2, "Satellites per plane");
    app.add_option("-F,--f", phasing, "Walker phasing factor");
    app.add_option("--altitude-km", altitude_km, "Orbit altitude");
    app.add_option("--inclination-deg", inclination_deg, "Orbit inclination");
    app.add_option("--polar-deg", polar_deg, "Polar region threshold")->expected(1, 64);
    app.add_option("--raan0-deg", raan0_deg, "Node longitude of plane 1");
    app.add_option("--phase0-deg", phase0_deg, "Phase of satellite (1,1) at epoch");
    app.add_option("--period-s", period_s, "Orbital period override");
  }

  ConstellationConfig build(bool single_threshold = true) const {
    ConstellationConfig c;
    if (!file.empty()) c = load_config_file(file);
    if (n1) c.n1 = *n1;
    if (n2) c.n2 = *n2;
    if (phasing) c.phasing = *phasing;
    if (altitude_km) c.altitude = *altitude_km * 1e3;
    if (inclination_deg) c.inclination = deg2rad(*inclination_deg);
    if (!polar_deg.empty()) {
      if (single_threshold && polar_deg.size() > 1) throw ConfigError("polar_threshold_deg", "expected one value");
      c.polar_threshold = deg2rad(polar_deg.front());
    }
    if (raan0_deg) c.raan0 = deg2rad(*raan0_deg);
    if (phase0_deg) c.phase0 = deg2rad(*phase0_deg);
    if (period_s) c.period_override = *period_s;
    c.validate();
    return c;
  }
};

std::string iso_timestamp(std::chrono::system_clock::time_point when) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(when);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string sha256_hex(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

/// Collects the files a subcommand produces and writes them together with
/// the manifest sidecar of the primary one.
class Emitter {
 public:
  Emitter(std::string subcommand, std::vector<std::string> args, std::ostream& out)
      : subcommand_(std::move(subcommand)), args_(std::move(args)), out_(out),
        started_(std::chrono::system_clock::now()) {}

  void set_config(const ConstellationConfig& c) { config_text_ = canonical_config_text(c); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

  /// `requested` is the --out value; empty picks <output dir>/<fallback>.
  std::string resolve(const std::string& requested, const std::string& fallback) const {
    if (requested == "-") return requested;
    if (!requested.empty()) return requested;
    const char* dir = std::getenv(kOutputDirEnv);
    return (fs::path(dir && *dir ? dir : ".") / fallback).string();
  }

  void write(const std::string& path, const std::string& content) {
    if (path == "-") {
      out_ << content;
      return;
    }
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream file(p, std::ios::binary);
    if (!file) throw ConfigError("out", "cannot write '" + path + "'");
    file << content;
    outputs_.push_back(path);
  }

  void finish() {
    if (outputs_.empty()) return;
    ordered_json m;
    m["config_digest"] = sha256_hex(config_text_);
    m["config"] = config_text_;
    m["seed"] = seed_ ? ordered_json(*seed_) : ordered_json(nullptr);
    m["subcommand"] = subcommand_;
    m["args"] = args_;
    m["version"] = kToolVersion;
    m["outputs"] = outputs_;
    m["notes"] = notes_;
    m["started"] = iso_timestamp(started_);
    m["finished"] = iso_timestamp(std::chrono::system_clock::now());
    std::ofstream file(outputs_.front() + ".manifest.json", std::ios::binary);
    file << m.dump(2) << '\n';
  }

 private:
  std::string subcommand_;
  std::vector<std::string> args_;
  std::ostream& out_;
  std::chrono::system_clock::time_point started_;
  std::string config_text_;
  std::optional<std::uint64_t> seed_;
  std::vector<std::string> outputs_;
  std::vector<std::string> notes_;
};

std::string json_text(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string csv_text(const std::vector<CsvRow>& rows) {
  std::ostringstream out;
  for (const auto& r : rows) write_csv_row(out, r);
  return out.str();
}

std::string opt_cell(const std::optional<double>& x) { return x ? format_double(*x) : std::string{}; }

ordered_json opt_json(const std::optional<double>& x) { return x ? ordered_json(*x) : ordered_json(nullptr); }

std::string address_text(VirtualAddress a) { return std::to_string(a.v) + ":" + std::to_string(a.h); }

std::vector<IslMode> parse_modes(const std::string& s) {
  if (s == "both") return {IslMode::conventional, IslMode::optimized};
  return {parse_isl_mode(s)};
}

ShutoffPolicy parse_policy(const std::string& s) {
  if (s == "row") return ShutoffPolicy::row_synchronized;
  if (s == "per-satellite") return ShutoffPolicy::per_satellite;
  throw ConfigError("policy", "expected row or per-satellite, got '" + s + "'");
}

GeoBox parse_box(const std::string& field, const std::vector<double>& v) {
  if (v.size() != 4) throw ConfigError(field, "expected lat_min lat_max lon_min lon_max");
  const GeoBox b{v[0], v[1], v[2], v[3]};
  if (b.lat_min > b.lat_max || b.lon_min > b.lon_max) throw ConfigError(field, "empty box");
  return b;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Celestial-sphere virtual-node toolkit for Walker-star constellations", "csdvn"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  ConfigFlags cfg;
  std::string out_path, format = "csv", mode_name = "optimized";
  std::optional<std::uint64_t> seed;
  std::function<void(Emitter&)> action;

  auto add_common = [&](CLI::App* sub, bool with_format) {
    cfg.attach(*sub);
    sub->add_option("--out", out_path, "Output file ('-' for stdout)");
    if (with_format) sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  // divide
  std::string division_kind = "matched";
  auto* divide = app.add_subcommand("divide", "Celestial-sphere VN table");
  add_common(divide, false);
  divide->add_option("--mode", mode_name, "ISL mode: conventional or optimized");
  divide->add_option("--division", division_kind, "matched or unphased")->check(CLI::IsMember({"matched", "unphased"}));
  divide->callback([&] {
    action = [&](Emitter& e) {
      const auto c = cfg.build();
      e.set_config(c);
      const auto mode = parse_isl_mode(mode_name);
      const auto division = division_kind == "matched" ? DivisionConfig::matched(c, mode) : DivisionConfig::unphased(c);
      std::ostringstream text;
      write_division_csv(text, division_table(c, division, mode_boundaries(c, mode)));
      e.write(e.resolve(out_path, "divide.csv"), text.str());
    };
  });

  // snapshot
  double t_seconds = 0.0;
  std::string policy_name = "row";
  auto* snapshot = app.add_subcommand("snapshot", "Physical ISL edge list at one instant");
  add_common(snapshot, true);
  snapshot->add_option("--t-seconds", t_seconds, "Time since epoch");
  snapshot->add_option("--mode", mode_name, "conventional or optimized");
  snapshot->add_option("--policy", policy_name, "row or per-satellite shut-off");
  snapshot->callback([&] {
    action = [&](Emitter& e) {
      const auto c = cfg.build();
      e.set_config(c);
      const auto mode = parse_isl_mode(mode_name);
      const auto edges = snapshot_edges(c, mode, DivisionConfig::matched(c, mode), t_seconds, parse_policy(policy_name));
      if (format == "csv") {
        std::vector<CsvRow> rows{{"a_plane", "a_slot", "b_plane", "b_slot", "kind", "direction", "active"}};
        for (const auto& x : edges)
          rows.push_back({std::to_string(x.a.plane), std::to_string(x.a.slot), std::to_string(x.b.plane),
                          std::to_string(x.b.slot), to_string(x.kind), to_string(x.direction), x.active ? "1" : "0"});
        e.write(e.resolve(out_path, "snapshot.csv"), csv_text(rows));
      } else {
        ordered_json j;
        j["t_seconds"] = t_seconds;
        j["mode"] = to_string(mode);
        j["edges"] = ordered_json::array();
        for (const auto& x : edges)
          j["edges"].push_back({{"a_plane", x.a.plane}, {"a_slot", x.a.slot}, {"b_plane", x.b.plane},
                                {"b_slot", x.b.slot}, {"kind", to_string(x.kind)},
                                {"direction", to_string(x.direction)}, {"active", x.active}});
        e.write(e.resolve(out_path, "snapshot.json"), json_text(j));
      }
    };
  });

  // staticness
  std::string method_name = "csd";
  std::optional<double> duration_s;
  int samples = 720;
  double min_elevation_deg = 0.0;
  bool no_epochs = false;
  auto* staticness = app.add_subcommand("staticness", "Topology events of a VN method over time");
  add_common(staticness, false);
  staticness->add_option("--method", method_name, "grd1, grd2 or csd");
  staticness->add_option("--mode", mode_name, "conventional or optimized");
  staticness->add_option("--duration-s", duration_s, "Span to simulate (default one period)");
  staticness->add_option("--samples", samples, "Evenly spaced samples");
  staticness->add_option("--min-elevation-deg", min_elevation_deg, "GRD coverage elevation mask");
  staticness->add_flag("--no-switching-epochs", no_epochs, "Skip the exact cell-crossing samples");
  staticness->callback([&] {
    action = [&](Emitter& e) {
      const auto c = cfg.build();
      e.set_config(c);
      const auto method = parse_vn_method(method_name);
      const auto mode = parse_isl_mode(mode_name);
      StaticnessOptions options;
      options.min_elevation = deg2rad(min_elevation_deg);
      options.include_switching_epochs = !no_epochs;
      const auto r = staticness_report(c, method, mode, duration_s.value_or(c.period()), samples, options);

      ordered_json j;
      j["method"] = to_string(r.method);
      j["mode"] = to_string(r.mode);
      j["duration"] = r.duration;
      j["samples"] = r.samples;
      j["requested_samples"] = r.requested_samples;
      j["event_count"] = r.event_count;
      j["events_by_cause"] = ordered_json::object();
      for (const auto& [cause, n] : r.events_by_cause) j["events_by_cause"][to_string(cause)] = n;
      j["seam_column_history"] = ordered_json::array();
      for (const auto& [t, col] : r.seam_column_history) j["seam_column_history"].push_back({{"t", t}, {"column", col}});
      j["mapping_conflicts"] = r.mapping_conflicts;
      j["reference_mismatch_samples"] = r.reference_mismatch_samples;
      j["events"] = ordered_json::array();
      std::vector<CsvRow> rows{{"t", "a", "b", "kind", "change", "cause"}};
      for (const auto& ev : r.events) {
        const std::string kind = ev.edge.kind == LinkClass::v_link ? "V" : "H";
        j["events"].push_back({{"t", ev.t}, {"a", address_text(ev.edge.a)}, {"b", address_text(ev.edge.b)},
                               {"kind", kind}, {"change", to_string(ev.change)}, {"cause", to_string(ev.cause)}});
        rows.push_back({format_double(ev.t), address_text(ev.edge.a), address_text(ev.edge.b), kind,
                        to_string(ev.change), to_string(ev.cause)});
      }
      const std::string path = e.resolve(out_path, "staticness.json");
      e.write(path, json_text(j));
      if (path != "-") e.write(fs::path(path).replace_extension(".events.csv").string(), csv_text(rows));
    };
  });

  // sweeps
  std::optional<int> f_min, f_max;
  int snapshots = 16, pairs = 10000;
  double capacity = 1.0;
  std::vector<double> source_box, sink_box;
  std::string sweep_modes = "both";
  auto add_sweep = [&](const std::string& name, const std::string& help, bool throughput, bool latency) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, true);
    sub->add_option("--f-min", f_min, "First phasing factor (default 0)");
    sub->add_option("--f-max", f_max, "Last phasing factor (default n2-1)");
    sub->add_option("--mode", sweep_modes, "conventional, optimized or both");
    sub->add_option("--seed", seed, "RNG seed");
    if (throughput) {
      sub->add_option("--snapshots", snapshots, "Snapshots per period");
      sub->add_option("--capacity-gbps", capacity, "ISL capacity");
      sub->add_option("--source-box", source_box, "lat_min lat_max lon_min lon_max (deg)")->expected(4);
      sub->add_option("--sink-box", sink_box, "lat_min lat_max lon_min lon_max (deg)")->expected(4);
    }
    if (latency) {
      sub->add_option("--snapshots", snapshots, "Snapshots per period");
      sub->add_option("--pairs", pairs, "Random satellite pairs");
    }
    sub->callback([&, name, throughput, latency] {
      action = [&, name, throughput, latency](Emitter& e) {
        if (latency && !seed) throw ConfigError("seed", "--seed is required for " + name);
        SweepPlan plan;
        plan.base = cfg.build(false);
        e.set_config(plan.base);
        if (seed) {
          plan.seed = *seed;
          e.set_seed(*seed);
        }
        plan.f_min = f_min.value_or(0);
        plan.f_max = f_max.value_or(plan.base.n2 - 1);
        if (cfg.polar_deg.empty()) plan.polar_thresholds = {plan.base.polar_threshold};
        for (double p : cfg.polar_deg) plan.polar_thresholds.push_back(deg2rad(p));
        plan.modes = parse_modes(sweep_modes);
        plan.with_throughput = throughput;
        plan.with_latency = latency;
        plan.flow_snapshots = plan.latency_snapshots = snapshots;
        plan.latency_pairs = pairs;
        plan.scenario.isl_capacity = capacity;
        if (!source_box.empty()) plan.scenario.source = parse_box("source_box", source_box);
        if (!sink_box.empty()) plan.scenario.sink = parse_box("sink_box", sink_box);
        if (plan.scenario.source.overlaps(plan.scenario.sink))
          throw ConfigError("sink_box", "source and sink regions must be disjoint");

        const auto rows = sweep(plan);
        std::vector<CsvRow> table{{"F", "polar_deg", "mode", "n_hisl", "throughput_gbps", "avg_latency_ms"}};
        ordered_json j = ordered_json::array();
        for (const auto& r : rows) {
          if (!r.error.empty()) {
            const std::string note = "F=" + std::to_string(r.phasing) + " polar_deg=" + format_double(r.polar_deg) +
                                     " mode=" + to_string(r.mode) + ": " + r.error;
            err << "warning: " << note << '\n';
            e.add_note(note);
          }
          if (r.unreachable_fraction > 0.0)
            e.add_note("F=" + std::to_string(r.phasing) + " polar_deg=" + format_double(r.polar_deg) + " mode=" +
                       to_string(r.mode) + ": unreachable pair fraction " + format_double(r.unreachable_fraction));
          const bool failed = !r.error.empty();
          table.push_back({std::to_string(r.phasing), format_double(r.polar_deg), to_string(r.mode),
                           failed ? "NA" : std::to_string(r.n_hisl), failed ? "NA" : opt_cell(r.throughput_gbps),
                           failed ? "NA" : opt_cell(r.avg_latency_ms)});
          ordered_json row{{"F", r.phasing}, {"polar_deg", r.polar_deg}, {"mode", to_string(r.mode)},
                           {"n_hisl", failed ? ordered_json(nullptr) : ordered_json(r.n_hisl)},
                           {"throughput_gbps", opt_json(r.throughput_gbps)},
                           {"avg_latency_ms", opt_json(r.avg_latency_ms)}};
          if (failed) row["error"] = r.error;
          j.push_back(row);
        }
        if (format == "csv") e.write(e.resolve(out_path, name + ".csv"), csv_text(table));
        else e.write(e.resolve(out_path, name + ".json"), json_text(j));
      };
    });
  };
  add_sweep("sweep-hisl", "Available H-ISLs against F", false, false);
  add_sweep("throughput", "Min-cost max-flow throughput against F", true, false);
  add_sweep("latency", "Mean shortest-path delay against F", false, true);

  // theorem1-check
  bool theorem_ok = true;
  auto* theorem = app.add_subcommand("theorem1-check", "Compare the optimized spread with exhaustive search");
  add_common(theorem, false);
  theorem->callback([&] {
    action = [&](Emitter& e) {
      const auto c = cfg.build();
      e.set_config(c);
      const auto brute = theorem1_bruteforce(c.n1, c.n2, c.phasing);
      const auto analysis = phase_analysis(c.n1, c.n2, c.phasing);
      theorem_ok = brute.min_spread_quanta == analysis.optimized_spread_quanta &&
                   analysis.optimized_spread_quanta <= analysis.conventional_spread_quanta;
      out << (theorem_ok ? "analytic == brute-force" : "analytic != brute-force") << " (n1=" << c.n1
          << " n2=" << c.n2 << " F=" << c.phasing << ": spread " << analysis.optimized_spread_quanta
          << " vs " << brute.min_spread_quanta << " quanta, " << brute.assignments_checked << " assignments)\n";
      ordered_json j{{"n1", c.n1},
                     {"n2", c.n2},
                     {"F", c.phasing},
                     {"analytic_spread_quanta", analysis.optimized_spread_quanta},
                     {"bruteforce_spread_quanta", brute.min_spread_quanta},
                     {"conventional_spread_quanta", analysis.conventional_spread_quanta},
                     {"analytic_spread_deg", rad2deg(analysis.optimized_spread)},
                     {"bruteforce_shifts", brute.shifts},
                     {"bruteforce_bh_boundaries", brute.bh_boundaries},
                     {"assignments_checked", brute.assignments_checked},
                     {"agree", theorem_ok}};
      e.write(e.resolve(out_path, "theorem1.json"), json_text(j));
    };
  });

  // verify
  std::string suite = "all";
  bool inject_fault = false;
  bool verify_ok = true;
  auto* verify = app.add_subcommand("verify", "Run the analytic-versus-oracle checks");
  verify->add_option("--suite", suite, "division, theorem1, staticness, counts, flow or all");
  verify->add_option("--out", out_path, "Report file ('-' for stdout)");
  verify->add_flag("--inject-fault", inject_fault)->group("");
  verify->callback([&] {
    action = [&](Emitter& e) {
      e.set_config(ConstellationConfig{});
      VerifyOptions options;
      options.inject_count_fault = inject_fault;
      const auto checks = run_verify(suite, options);
      ordered_json j = ordered_json::array();
      std::map<std::string, std::pair<int, int>> tally;
      const VerifyCheck* first_failure = nullptr;
      for (const auto& c : checks) {
        j.push_back({{"suite", c.suite}, {"check", c.name}, {"params", c.params}, {"passed", c.passed},
                     {"detail", c.detail}});
        auto& [passed, total] = tally[c.suite];
        ++total;
        if (c.passed) ++passed;
        else if (!first_failure) first_failure = &c;
      }
      for (const auto& [name, counts] : tally)
        out << name << ": " << counts.first << "/" << counts.second << " passed\n";
      if (first_failure) {
        verify_ok = false;
        out << "FAIL " << first_failure->suite << "/" << first_failure->name << " [" << first_failure->params
            << "]: " << first_failure->detail << '\n';
      }
      e.write(e.resolve(out_path, "verify.json"), json_text(j));
    };
  });

  std::vector<std::string> argv_store{"csdvn"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const auto* chosen = app.get_subcommands().front();
  Emitter emitter(chosen->get_name(), args, out);
  try {
    action(emitter);
    emitter.finish();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!verify_ok || !theorem_ok) return kExitVerifyFailed;
  return kExitOk;
}

}  // namespace csdvn
