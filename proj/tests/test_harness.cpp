#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "sccsa/error.hpp"
#include "sccsa/harness.hpp"

using namespace sccsa;
namespace fs = std::filesystem;

namespace {

RunRecord finished(double value, std::string problem = "f1", std::string algorithm = "sccsa") {
  RunRecord r;
  r.problem_id = std::move(problem);
  r.algorithm_id = std::move(algorithm);
  r.final_best_fitness = value;
  r.trace = {value};
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sccsa_test_harness_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::vector<std::string>> read_rows(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    for (std::string f; std::getline(ls, f, ',');) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

PlanRequest small_request() {
  PlanRequest req;
  req.problem_ids = {"f1", "f7"};
  req.algorithm_ids = {"sccsa", "random"};
  req.runs_per_cell = 4;
  req.budget_fe = 600;
  req.pop_size = 20;
  req.base_seed = 42;
  return req;
}

}  // namespace

TEST_CASE("summarize") {
  SUBCASE("three values") {
    const std::vector<RunRecord> r = {finished(1), finished(2), finished(3)};
    const auto s = summarize(r);
    CHECK(s.ave == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.sdev == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.max == 3.0);
    CHECK(s.min == 1.0);
    CHECK(s.n == 3);
  }
  SUBCASE("single value") {
    const std::vector<RunRecord> r = {finished(5)};
    const auto s = summarize(r);
    CHECK(s.ave == 5.0);
    CHECK(s.sdev == 0.0);
    CHECK(s.max == 5.0);
    CHECK(s.min == 5.0);
  }
  SUBCASE("constant sample") {
    const std::vector<RunRecord> r = {finished(4), finished(4), finished(4), finished(4)};
    CHECK(summarize(r).sdev == 0.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(summarize(std::vector<RunRecord>{}), ArgumentError);
    const std::vector<RunRecord> mixed = {finished(1), finished(2, "f2")};
    CHECK_THROWS_AS(summarize(mixed), ArgumentError);
    const std::vector<RunRecord> mixed_algo = {finished(1), finished(2, "f1", "csa")};
    CHECK_THROWS_AS(summarize(mixed_algo), ArgumentError);
  }
}

TEST_CASE("summarize properties on random samples") {
  std::mt19937_64 gen(8);
  std::lognormal_distribution<double> dist(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 40;
    std::vector<RunRecord> records;
    for (std::size_t i = 0; i < n; ++i) records.push_back(finished(dist(gen)));
    const auto s = summarize(records);
    double sq = 0;
    for (const auto& r : records) {
      REQUIRE(s.min <= r.final_best_fitness);
      REQUIRE(r.final_best_fitness <= s.max);
      sq += (r.final_best_fitness - s.ave) * (r.final_best_fitness - s.ave);
    }
    REQUIRE(s.min <= s.ave);
    REQUIRE(s.ave <= s.max);
    if (n > 1) REQUIRE(std::abs(s.sdev * s.sdev * static_cast<double>(n - 1) - sq) <= 1e-12 * std::max(sq, 1e-300));
    std::shuffle(records.begin(), records.end(), gen);
    const auto t = summarize(records);
    REQUIRE(t.min == s.min);
    REQUIRE(t.max == s.max);
    REQUIRE(t.ave == doctest::Approx(s.ave).epsilon(1e-12));
    REQUIRE(t.sdev == doctest::Approx(s.sdev).epsilon(1e-12));
  }
}

TEST_CASE("run_experiment") {
  const ExperimentPlan plan = resolve_plan(small_request());
  SUBCASE("cardinality and ordering") {
    const auto records = run_experiment(plan);
    REQUIRE(records.size() == 16);
    for (std::size_t k = 0; k < records.size(); ++k) {
      CHECK(records[k].problem_id == (k < 8 ? "f1" : "f7"));
      CHECK(records[k].algorithm_id == ((k / 4) % 2 == 0 ? "sccsa" : "random"));
      CHECK(records[k].run_index == k % 4);
      CHECK(records[k].fe_count == 600);
      CHECK(records[k].seed == derive_run_seed(42, records[k].problem_id, records[k].algorithm_id, k % 4));
    }
  }
  SUBCASE("deterministic and independent of thread count") {
    const auto a = run_experiment(plan, 1);
    const auto b = run_experiment(plan, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].seed == b[k].seed);
      CHECK(a[k].trace == b[k].trace);
      CHECK(a[k].final_best_position == b[k].final_best_position);
    }
  }
  SUBCASE("adding a cell does not perturb existing cells") {
    PlanRequest wider = small_request();
    wider.problem_ids = {"f3", "f1", "f7"};
    const auto base = run_experiment(plan, 2);
    const auto more = run_experiment(resolve_plan(wider), 2);
    for (const auto& r : base) {
      const auto it = std::find_if(more.begin(), more.end(), [&](const RunRecord& m) {
        return m.problem_id == r.problem_id && m.algorithm_id == r.algorithm_id && m.run_index == r.run_index;
      });
      REQUIRE(it != more.end());
      CHECK(it->trace == r.trace);
    }
  }
}

TEST_CASE("plan validation") {
  PlanRequest req = small_request();
  req.runs_per_cell = 0;
  CHECK_THROWS_AS(resolve_plan(req), ConfigError);
  req = small_request();
  req.algorithm_ids.push_back("nosuch");
  CHECK_THROWS_WITH_AS(resolve_plan(req), doctest::Contains("nosuch"), ConfigError);
  req = small_request();
  req.problem_ids.push_back("f9");
  CHECK_THROWS_WITH_AS(resolve_plan(req), doctest::Contains("f9"), ConfigError);
  req = small_request();
  req.problem_ids.push_back("f1");
  CHECK_THROWS_AS(resolve_plan(req), ConfigError);
  req = small_request();
  req.budget_fe = 10;
  CHECK_THROWS_AS(resolve_plan(req), ConfigError);
}

TEST_CASE("comparison_report") {
  std::vector<CellSummary> one = {{"f1", "sccsa", summarize_values(std::vector<double>{1, 2, 3})}};
  SUBCASE("one cell gives four rows") {
    const Report r = comparison_report(one);
    int body = 0;
    std::istringstream in(r.markdown);
    for (std::string line; std::getline(in, line);) {
      if (line.rfind("| f1 |", 0) == 0 || line.rfind("|  |", 0) == 0) ++body;
    }
    CHECK(body == 4);
    CHECK(r.markdown.find("| f1 | Ave | 2.00000E+00 |") != std::string::npos);
    CHECK(r.markdown.find("n-1") != std::string::npos);
    CHECK(r.csv.find("f1,sccsa,Sdev,1.00000000000000000e+00,measured") != std::string::npos);
  }
  SUBCASE("published reference values are copied verbatim and flagged") {
    std::istringstream ref("function,algorithm,stat,value\nF1,SCCSA,Ave,9.22E-69\nF1,GA,Min,1.62E-04\n");
    const auto table = read_reference_table(ref);
    REQUIRE(table.size() == 2);
    const Report r = comparison_report(one, table);
    CHECK(r.markdown.find("SCCSA [published]") != std::string::npos);
    CHECK(r.markdown.find("9.22E-69") != std::string::npos);
    CHECK(r.markdown.find("published, not reproduced") != std::string::npos);
    CHECK(r.csv.find("f1,SCCSA,Ave,9.22E-69,published") != std::string::npos);
  }
  SUBCASE("empty") { CHECK_THROWS_AS(comparison_report(std::vector<CellSummary>{}), ArgumentError); }
  SUBCASE("malformed reference row") {
    std::istringstream bad("function,algorithm,stat,value\nF1,SCCSA,Ave\n");
    CHECK_THROWS_WITH_AS(read_reference_table(bad), doctest::Contains("row 2"), IoError);
  }
}

TEST_CASE("shipped reference table parses") {
  const auto table = read_reference_table(fs::path(SCCSA_DATA_DIR) / "published_reference.csv");
  CHECK(table.size() == 7 * 4 * 9);
  const auto it = std::find_if(table.begin(), table.end(), [](const ReferenceValue& v) {
    return v.function == "F1" && v.algorithm == "SCCSA" && v.stat == "Ave";
  });
  REQUIRE(it != table.end());
  CHECK(it->value == "9.22E-69");
}

TEST_CASE("export_convergence") {
  PlanRequest req = small_request();
  req.problem_ids = {"f2"};
  req.algorithm_ids = {"sccsa"};
  req.runs_per_cell = 30;
  req.pop_size = 10;
  req.budget_fe = 1010;  // 100 iterations after initialization
  const auto records = run_experiment(resolve_plan(req), 4);
  const fs::path dir = scratch("export");

  const auto files = export_convergence(records, dir);
  REQUIRE(files.size() == 1);
  CHECK(files.front().filename() == "f2_sccsa.csv");
  const auto rows = read_rows(files.front());
  REQUIRE(rows.size() == 102);
  CHECK(rows.front().front() == "iteration");
  CHECK(rows.front().back() == "mean");
  for (const auto& row : rows) REQUIRE(row.size() == 32);

  // Mean column recomputed from the per-run columns as written.
  for (std::size_t k = 1; k < rows.size(); ++k) {
    double sum = 0;
    for (std::size_t c = 1; c <= 30; ++c) sum += std::stod(rows[k][c]);
    const double mean = std::stod(rows[k][31]);
    REQUIRE(mean == doctest::Approx(sum / 30).epsilon(1e-12));
  }

  const std::string first = slurp(files.front());
  export_convergence(records, dir);
  CHECK(slurp(files.front()) == first);
  fs::remove_all(dir);
}

TEST_CASE("export_convergence errors") {
  CHECK_THROWS_AS(export_convergence(std::vector<RunRecord>{}, scratch("empty")), ArgumentError);
  std::vector<RunRecord> ragged = {finished(1), finished(2)};
  ragged[1].trace = {3, 2};
  ragged[1].run_index = 1;
  CHECK_THROWS_AS(export_convergence(ragged, scratch("ragged")), ArgumentError);
  const fs::path blocker = scratch("blocker");
  { std::ofstream(blocker) << "x"; }
  CHECK_THROWS_AS(export_convergence(std::vector<RunRecord>{finished(1)}, blocker / "sub"), IoError);
  fs::remove_all(blocker);
}

TEST_CASE("finals round trip") {
  const auto records = run_experiment(resolve_plan(small_request()), 2);
  const fs::path dir = scratch("finals");
  fs::create_directories(dir);
  write_finals_csv(records, dir / "finals.csv");
  const auto back = read_finals_csv(dir / "finals.csv");
  REQUIRE(back.size() == records.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    CHECK(back[k].seed == records[k].seed);
    CHECK(back[k].final_best_fitness == records[k].final_best_fitness);
  }
  const auto a = summarize_cells(records);
  const auto b = summarize_cells(back);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].stats.ave == b[k].stats.ave);
  fs::remove_all(dir);
}
