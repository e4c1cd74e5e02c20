#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sccsa/algorithms.hpp"
#include "sccsa/benchmarks.hpp"

namespace sccsa {

inline constexpr std::size_t kDefaultRunsPerCell = 30;

/// Every (problem, algorithm) cell is run `runs_per_cell` times.
struct ExperimentPlan {
  std::vector<Problem> problems;
  std::vector<AlgorithmConfig> algorithms;
  std::size_t runs_per_cell = kDefaultRunsPerCell;
  std::size_t budget_fe = kDefaultBudget;
  std::uint64_t base_seed = 0;
  std::size_t pop_size = kDefaultPopulation;

  /// Throws ConfigError on empty lists, duplicate ids, zero runs or a bad budget.
  void validate() const;
};

/// String-keyed description of a plan, as the CLI and config files carry it.
struct PlanRequest {
  std::vector<std::string> problem_ids;
  std::vector<std::string> algorithm_ids;
  std::size_t dimension = kDefaultBenchmarkDimension;
  std::size_t runs_per_cell = kDefaultRunsPerCell;
  std::size_t budget_fe = kDefaultBudget;
  std::uint64_t base_seed = 0;
  std::size_t pop_size = kDefaultPopulation;
  R1Mode r1_mode = R1Mode::sca_original;
  DiffMode diff_mode = DiffMode::signed_diff;
};

/// Resolves ids against the registry. Unknown ids throw ConfigError naming the id.
ExperimentPlan resolve_plan(const PlanRequest& request, const ProblemRegistry& registry = {});

/// Runs every cell of the plan on up to `jobs` threads.
///
/// Records come back ordered by (problem, algorithm, run_index) in plan order
/// regardless of `jobs`. Seeds come from derive_run_seed, so a cell's records
/// do not depend on which other cells are in the plan.
std::vector<RunRecord> run_experiment(const ExperimentPlan& plan, std::size_t jobs = 1);

struct SummaryStats {
  double ave = 0.0;
  double sdev = 0.0;  ///< sample standard deviation, n - 1 denominator (0 when n == 1)
  double max = 0.0;   ///< worst final
  double min = 0.0;   ///< best final
  std::size_t n = 0;
};

SummaryStats summarize_values(std::span<const double> finals);

/// Statistics of the final best fitness of one cell's records. Throws
/// ArgumentError on empty input or records from different cells.
SummaryStats summarize(std::span<const RunRecord> records);

struct CellSummary {
  std::string problem_id;
  std::string algorithm_id;
  SummaryStats stats;
};

/// One CellSummary per cell, in first-appearance order.
std::vector<CellSummary> summarize_cells(std::span<const RunRecord> records);

/// A published number, kept as the original text.
struct ReferenceValue {
  std::string function;
  std::string algorithm;
  std::string stat;  ///< Ave, Sdev, Max or Min
  std::string value;
};

/// Parses a CSV with header `function,algorithm,stat,value`. Throws IoError.
std::vector<ReferenceValue> read_reference_table(std::istream& in);
std::vector<ReferenceValue> read_reference_table(const std::filesystem::path& path);

struct Report {
  std::string markdown;
  std::string csv;
};

/// Table with algorithms as columns and one Ave/Sdev/Max/Min row group per
/// function. Reference columns are appended verbatim and marked as
/// published. Throws ArgumentError when `cells` is empty.
Report comparison_report(std::span<const CellSummary> cells, std::span<const ReferenceValue> reference = {});

/// Writes `<dir>/<problem>_<algorithm>.csv` per cell with columns
/// iteration, run_0 .. run_{n-1}, mean. Returns the files written in cell order.
/// Throws ArgumentError on empty input or ragged traces, IoError on write failure.
std::vector<std::filesystem::path> export_convergence(std::span<const RunRecord> records,
                                                      const std::filesystem::path& dir);

/// Columns: problem,algorithm,run_index,seed,fe_count,final_best_fitness.
void write_finals_csv(std::span<const RunRecord> records, const std::filesystem::path& path);

/// Reads a finals CSV back; traces and positions are not stored there.
std::vector<RunRecord> read_finals_csv(const std::filesystem::path& path);

/// Full precision ("%.17e") rendering used by every CSV writer.
std::string format_full(double value);

}  // namespace sccsa
