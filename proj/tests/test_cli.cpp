#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "csdvn/cli.hpp"
#include "csdvn/io.hpp"

using namespace csdvn;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const char* env = std::getenv("CSDVN_TEST_TMP");
  fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "csdvn_cli_test";
  fs::create_directories(dir);
  return dir;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("divide writes one row per cell and a manifest") {
  const auto path = scratch_dir() / "divide.csv";
  const auto r = run({"divide", "--n1", "18", "--n2", "36", "--polar-deg", "70", "--out", path.string()});
  CHECK(r.code == kExitOk);
  const std::string text = slurp(path);
  CHECK(std::count(text.begin(), text.end(), '\n') == 649);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.rfind("v,h,region,lat_low_deg,lat_high_deg,lon_low_deg,lon_high_deg,pole_wrap\n", 0) == 0);

  const auto manifest = nlohmann::json::parse(slurp(path.string() + ".manifest.json"));
  CHECK(manifest["subcommand"] == "divide");
  CHECK(manifest["version"] == kToolVersion);
  CHECK(manifest["config_digest"].get<std::string>().size() == 64);
  CHECK(manifest["seed"].is_null());

  SUBCASE("the table reads back to identical cell bounds") {
    std::ifstream in(path);
    const auto rows = read_division_csv(in);
    ConstellationConfig c;
    const auto d = DivisionConfig::matched(c, IslMode::optimized);
    REQUIRE(rows.size() == 648);
    for (const auto& row : rows) CHECK(row.bounds == vn_cell_bounds(row.address.v, row.address.h, d, c));
  }
}

TEST_CASE("config files") {
  const auto cfg = scratch_dir() / "walker.cfg";
  {
    std::ofstream f(cfg);
    f << "# small walker star\nn1 = 6\nn2 = 12   # per plane\nF = 2\npolar_threshold_deg = 64\n";
  }
  std::ifstream in(cfg);
  const auto c = parse_config(in);
  CHECK(c.n1 == 6);
  CHECK(c.n2 == 12);
  CHECK(c.phasing == 2);
  CHECK(rad2deg(c.polar_threshold) == doctest::Approx(64.0));
  CHECK_FALSE(c.phase0.has_value());

  std::istringstream canon(canonical_config_text(c));
  const auto again = parse_config(canon);
  CHECK(canonical_config_text(again) == canonical_config_text(c));

  const auto out = scratch_dir() / "small.csv";
  CHECK(run({"divide", "--config", cfg.string(), "--out", out.string()}).code == kExitOk);

  const auto bad = scratch_dir() / "bad.cfg";
  {
    std::ofstream f(bad);
    f << "n1 = 6\nn2 = twelve\n";
  }
  const auto r = run({"divide", "--config", bad.string(), "--out", out.string()});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("n2") != std::string::npos);

  std::istringstream unknown("n3 = 4\n");
  CHECK_THROWS_AS(parse_config(unknown), ConfigError);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"divide", "--n2", "2", "--out", "-"}).code == kExitUsage);
  const auto r = run({"latency", "--f-max", "1", "--out", "-"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("seed") != std::string::npos);
  CHECK(run({"theorem1-check", "--n1", "13", "--n2", "26", "--out", "-"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("theorem1-check reports agreement") {
  const auto r = run({"theorem1-check", "--n1", "9", "--n2", "18", "--f", "3", "--out", "-"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("analytic == brute-force") != std::string::npos);
}

TEST_CASE("verify fails loudly on a corrupted count formula") {
  const auto path = scratch_dir() / "verify.json";
  const auto good = run({"verify", "--suite", "counts", "--out", path.string()});
  CHECK(good.code == kExitOk);
  const auto bad = run({"verify", "--suite", "all", "--inject-fault", "--out", path.string()});
  CHECK(bad.code == kExitVerifyFailed);
  CHECK(bad.out.find("FAIL counts/hisl_analytic_vs_geometric") != std::string::npos);
  CHECK(run({"verify", "--suite", "nope", "--out", "-"}).code == kExitUsage);
}

TEST_CASE("outputs are byte-identical across runs") {
  const auto a = scratch_dir() / "lat_a.csv";
  const auto b = scratch_dir() / "lat_b.csv";
  for (const auto& p : {a, b})
    REQUIRE(run({"latency", "--f-min", "0", "--f-max", "2", "--pairs", "300", "--snapshots", "2", "--seed", "42",
                 "--out", p.string()})
                .code == kExitOk);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).rfind("F,polar_deg,mode,n_hisl,throughput_gbps,avg_latency_ms\n", 0) == 0);
  const auto manifest = nlohmann::json::parse(slurp(a.string() + ".manifest.json"));
  CHECK(manifest["seed"] == 42);
}

TEST_CASE("sweep CSV and JSON") {
  const auto r = run({"sweep-hisl", "--f-max", "2", "--polar-deg", "70", "--out", "-"});
  CHECK(r.code == kExitOk);
  CHECK(r.out ==
        "F,polar_deg,mode,n_hisl,throughput_gbps,avg_latency_ms\n"
        "0,70,conventional,476,,\n0,70,optimized,476,,\n"
        "1,70,conventional,442,,\n1,70,optimized,442,,\n"
        "2,70,conventional,408,,\n2,70,optimized,442,,\n");
  const auto j = run({"sweep-hisl", "--f-min", "35", "--f-max", "36", "--format", "json", "--out", "-"});
  CHECK(j.code == kExitOk);
  const auto rows = nlohmann::json::parse(j.out);
  CHECK(rows.size() == 4);
  CHECK(rows[2].contains("error"));
  CHECK(rows[2]["n_hisl"].is_null());
}

TEST_CASE("snapshot and staticness outputs") {
  const auto snap = run({"snapshot", "--t-seconds", "0", "--mode", "conventional", "--out", "-"});
  CHECK(snap.code == kExitOk);
  CHECK(snap.out.rfind("a_plane,a_slot,b_plane,b_slot,kind,direction,active\n", 0) == 0);
  CHECK(std::count(snap.out.begin(), snap.out.end(), '\n') == 1 + 648 + 612);

  const auto path = scratch_dir() / "static.json";
  const auto st = run({"staticness", "--method", "csd", "--f", "2", "--samples", "90", "--out", path.string()});
  CHECK(st.code == kExitOk);
  const auto report = nlohmann::json::parse(slurp(path));
  CHECK(report["event_count"] == 0);
  CHECK(report["method"] == "csd");
  CHECK(fs::exists(scratch_dir() / "static.events.csv"));
}

TEST_CASE("output directory override") {
  const auto dir = scratch_dir() / "envdir";
  setenv(kOutputDirEnv, dir.c_str(), 1);
  const auto r = run({"sweep-hisl", "--f-max", "1"});
  unsetenv(kOutputDirEnv);
  CHECK(r.code == kExitOk);
  CHECK(fs::exists(dir / "sweep-hisl.csv"));
  CHECK(fs::exists(dir / "sweep-hisl.csv.manifest.json"));
}
