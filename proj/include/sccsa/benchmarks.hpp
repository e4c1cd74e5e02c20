#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sccsa/core.hpp"

namespace sccsa {

/// The seven unimodal test functions.
///
///   f1  sphere                 sum x_i^2                              [-100, 100]
///   f2  Schwefel 2.22          sum |x_i| + prod |x_i|                 [-10, 10]
///   f3  Schwefel 1.2           sum_i (sum_{j<=i} x_j)^2               [-100, 100]
///   f4  Schwefel 2.21          max_i |x_i|                            [-100, 100]
///   f5  Rosenbrock             sum 100 (x_{i+1} - x_i^2)^2 + (x_i-1)^2 [-30, 30]
///   f6  step                   sum floor(x_i + 0.5)^2                 [-100, 100]
///   f7  noisy quartic          sum i x_i^4 + U[0, 1)                  [-1.28, 1.28]
///
/// Every minimum is 0.
enum class BenchmarkId { f1, f2, f3, f4, f5, f6, f7 };

inline constexpr std::array<BenchmarkId, 7> kAllBenchmarks = {
    BenchmarkId::f1, BenchmarkId::f2, BenchmarkId::f3, BenchmarkId::f4,
    BenchmarkId::f5, BenchmarkId::f6, BenchmarkId::f7};

inline constexpr std::size_t kDefaultBenchmarkDimension = 10;

std::string_view to_string(BenchmarkId id) noexcept;
std::optional<BenchmarkId> parse_benchmark_id(std::string_view text) noexcept;

struct BenchmarkSpec {
  BenchmarkId id = BenchmarkId::f1;
  std::size_t dimension = kDefaultBenchmarkDimension;
  Bounds bounds = Bounds::uniform(-100.0, 100.0, kDefaultBenchmarkDimension);
  double f_min = 0.0;
  bool stochastic = false;
};

/// Table row for `id` at the requested dimension. Throws ArgumentError for dimension 0.
BenchmarkSpec make_benchmark(BenchmarkId id, std::size_t dimension = kDefaultBenchmarkDimension);

/// Evaluates the benchmark formula at x.
///
/// A stochastic spec (f7) needs a noise stream and consumes exactly one
/// uniform [0, 1) draw from it. Throws ArgumentError when the stream is
/// missing for f7 or when x leaves the bounds; StructuralError on a length
/// mismatch.
double evaluate(const BenchmarkSpec& spec, std::span<const double> x, RngStream* noise = nullptr);

/// Same formula without the additive noise term; identity for f1..f6.
BenchmarkSpec noiseless_variant(const BenchmarkSpec& spec);

/// Wraps a spec as a generic Problem (id "f1".."f7", "f7-noiseless" for the quiet f7).
Problem make_problem(const BenchmarkSpec& spec);

/// Name -> problem factory lookup used by the CLI and config files.
///
/// The seven built-in functions are always present; user objectives can be
/// added under new names.
class ProblemRegistry {
 public:
  using Factory = std::function<Problem(std::size_t dimension)>;

  ProblemRegistry();

  /// Throws ConfigError when the name is already taken.
  void add(std::string name, Factory factory);

  bool contains(std::string_view name) const;

  /// Throws ConfigError naming the unknown id.
  Problem make(std::string_view name, std::size_t dimension = kDefaultBenchmarkDimension) const;

  std::vector<std::string> names() const;

 private:
  std::map<std::string, Factory, std::less<>> factories_;
};

}  // namespace sccsa
