#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sccsa/cli.hpp"
#include "sccsa/error.hpp"

using namespace sccsa;
using namespace sccsa::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "sccsa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sccsa_test_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config text") {
  std::istringstream in("# comment\n\nbudget = 5000\n  runs=5\nr1_mode = paper\n");
  const Settings s = parse_config_text(in);
  CHECK(s.at("budget") == "5000");
  CHECK(s.at("runs") == "5");
  CHECK(s.at("r1_mode") == "paper");

  std::istringstream unknown("budgets = 3\n");
  CHECK_THROWS_WITH_AS(parse_config_text(unknown), doctest::Contains("budgets"), ConfigError);
  std::istringstream no_eq("budget 3\n");
  CHECK_THROWS_WITH_AS(parse_config_text(no_eq), doctest::Contains("line 1"), ConfigError);
}

TEST_CASE("resolve_settings") {
  const EffectiveConfig c = resolve_settings({{"algo", "sccsa,csa"}, {"fn", "f1"}, {"pop", "20"},
                                              {"budget", "400"}, {"csa_diff", "signed"}, {"jobs", "2"}});
  CHECK(c.algorithms == std::vector<std::string>{"sccsa", "csa"});
  CHECK(c.pop_size == 20);
  CHECK(c.diff_mode == DiffMode::signed_diff);
  CHECK(c.r1_mode == R1Mode::sca_original);

  // The banner is itself a valid config and resolves to the same settings.
  std::istringstream banner(c.banner());
  CHECK(resolve_settings(parse_config_text(banner)).banner() == c.banner());

  CHECK_THROWS_AS(resolve_settings({{"pop", "1"}}), ConfigError);
  CHECK_THROWS_AS(resolve_settings({{"pop", "30"}, {"budget", "29"}}), ConfigError);
  CHECK_THROWS_AS(resolve_settings({{"dim", "-3"}}), ConfigError);
  CHECK_THROWS_AS(resolve_settings({{"r1_mode", "fast"}}), ConfigError);
  CHECK_THROWS_AS(resolve_settings({{"algo", "pso"}}), ConfigError);
  CHECK_THROWS_AS(resolve_settings({{"colour", "red"}}), ConfigError);
}

TEST_CASE("list") {
  const auto r = invoke({"list"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("f7") != std::string::npos);
  CHECK(r.out.find("random") != std::string::npos);
}

TEST_CASE("run") {
  const fs::path dir = scratch("run");
  SUBCASE("sccsa on f1") {
    const auto r = invoke({"run", "--algo", "sccsa", "--fn", "f1", "--dim", "10", "--budget", "10000", "--seed", "1",
                           "--out", dir.string()});
    REQUIRE(r.code == kExitOk);
    const auto pos = r.out.find("final_best_fitness = ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(r.out.substr(pos + 21)) >= 0.0);
    CHECK(r.out.find("seed = ") != std::string::npos);
    CHECK(fs::exists(dir / "convergence" / "f1_sccsa.csv"));
  }
  SUBCASE("accounting") {
    const auto r = invoke({"run", "--algo", "random", "--fn", "f5", "--budget", "300", "--pop", "30", "--out",
                           dir.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("fe_count = 300") != std::string::npos);
  }
  SUBCASE("missing --fn") {
    const auto r = invoke({"run", "--algo", "sccsa", "--out", dir.string()});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("--fn") != std::string::npos);
  }
  SUBCASE("config file with flag override") {
    fs::create_directories(dir);
    std::ofstream(dir / "cfg.txt") << "fn = f2\nbudget = 600\npop = 20\nalgo = sca\n";
    const auto r = invoke({"run", "--config", (dir / "cfg.txt").string(), "--budget", "400", "--set", "seed=9",
                           "--out", dir.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("budget = 400") != std::string::npos);
    CHECK(r.out.find("seed = 9\n") != std::string::npos);
    CHECK(r.out.find("algo = sca") != std::string::npos);
    CHECK(r.out.find("fe_count = 400") != std::string::npos);
  }
  SUBCASE("unknown --set key") {
    const auto r = invoke({"run", "--fn", "f1", "--set", "speed=3", "--out", dir.string()});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("speed") != std::string::npos);
  }
  SUBCASE("missing config file is an I/O error") {
    const auto r = invoke({"run", "--fn", "f1", "--config", (dir / "nope.txt").string()});
    CHECK(r.code == kExitIo);
  }
  fs::remove_all(dir);
}

TEST_CASE("bench errors leave nothing behind") {
  const fs::path dir = scratch("bench_err");
  const auto r = invoke({"bench", "--algo", "nosuch", "--out", dir.string()});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("nosuch") != std::string::npos);
  CHECK_FALSE(fs::exists(dir));

  const auto missing_ref = invoke({"bench", "--budget", "300", "--runs", "1", "--reference",
                                   (dir / "missing.csv").string(), "--out", dir.string()});
  CHECK(missing_ref.code == kExitIo);
  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("output directory from the environment") {
  const fs::path dir = scratch("env");
  ::setenv(kOutDirEnv, dir.string().c_str(), 1);
  const auto r = invoke({"run", "--fn", "f4", "--budget", "200", "--pop", "10"});
  ::unsetenv(kOutDirEnv);
  REQUIRE(r.code == kExitOk);
  CHECK(fs::exists(dir / "convergence" / "f4_sccsa.csv"));
  fs::remove_all(dir);
}

TEST_CASE("report and plot subcommands") {
  const fs::path dir = scratch("report");
  const auto bench = invoke({"bench", "--fn", "f1,f2", "--algo", "sccsa,sca", "--budget", "600", "--pop", "20",
                             "--runs", "3", "--jobs", "2", "--out", dir.string()});
  REQUIRE(bench.code == kExitOk);

  const auto report = invoke({"report", "--in", (dir / "finals.csv").string(), "--reference",
                              std::string(SCCSA_DATA_DIR) + "/published_reference.csv", "--out",
                              (dir / "re").string()});
  REQUIRE(report.code == kExitOk);
  CHECK(report.out.find("9.22E-69") != std::string::npos);
  CHECK(fs::exists(dir / "re" / "report.md"));

  const auto plot = invoke({"plot", (dir / "convergence" / "f1_sccsa.csv").string(),
                            (dir / "convergence" / "f1_sca.csv").string(), "--out", (dir / "f1.svg").string()});
  REQUIRE(plot.code == kExitOk);
  CHECK(fs::exists(dir / "f1.svg"));

  std::ofstream(dir / "bad.csv") << "iteration,run_0,mean\n0,1,1\n1,oops\n";
  const auto bad = invoke({"plot", (dir / "bad.csv").string(), "--out", (dir / "bad.svg").string()});
  CHECK(bad.code != kExitOk);
  CHECK(bad.err.find("row 3") != std::string::npos);

  const auto missing = invoke({"report", "--in", (dir / "none.csv").string()});
  CHECK(missing.code == kExitIo);
  fs::remove_all(dir);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == kExitConfig);
  CHECK(invoke({"frobnicate"}).code == kExitConfig);
  CHECK(invoke({"bench", "--budget", "abc", "--out", scratch("usage").string()}).code == kExitConfig);
  CHECK(invoke({"--help"}).code == kExitOk);
}
