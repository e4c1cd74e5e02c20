#include "sccsa/benchmarks.hpp"

#include <algorithm>
#include <cmath>

#include "sccsa/error.hpp"

namespace sccsa {

namespace {

struct Row {
  BenchmarkId id;
  std::string_view name;
  double lo;
  double hi;
};

constexpr std::array<Row, 7> kRows = {{
    {BenchmarkId::f1, "f1", -100.0, 100.0},
    {BenchmarkId::f2, "f2", -10.0, 10.0},
    {BenchmarkId::f3, "f3", -100.0, 100.0},
    {BenchmarkId::f4, "f4", -100.0, 100.0},
    {BenchmarkId::f5, "f5", -30.0, 30.0},
    {BenchmarkId::f6, "f6", -100.0, 100.0},
    {BenchmarkId::f7, "f7", -1.28, 1.28},
}};

const Row& row(BenchmarkId id) { return kRows[static_cast<std::size_t>(id)]; }

double sphere(std::span<const double> x) {
  double sum = 0.0;
  for (const double v : x) sum += v * v;
  return sum;
}

double schwefel_2_22(std::span<const double> x) {
  double sum = 0.0;
  double product = 1.0;
  for (const double v : x) {
    sum += std::abs(v);
    product *= std::abs(v);
  }
  return sum + product;
}

double schwefel_1_2(std::span<const double> x) {
  double total = 0.0;
  double prefix = 0.0;
  for (const double v : x) {
    prefix += v;
    total += prefix * prefix;
  }
  return total;
}

double schwefel_2_21(std::span<const double> x) {
  double worst = 0.0;
  for (const double v : x) worst = std::max(worst, std::abs(v));
  return worst;
}

double rosenbrock(std::span<const double> x) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = x[i] - 1.0;
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

double step(std::span<const double> x) {
  double sum = 0.0;
  for (const double v : x) {
    const double s = std::floor(v + 0.5);
    sum += s * s;
  }
  return sum;
}

double quartic(std::span<const double> x) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double sq = x[i] * x[i];
    sum += static_cast<double>(i + 1) * sq * sq;
  }
  return sum;
}

}  // namespace

std::string_view to_string(BenchmarkId id) noexcept { return row(id).name; }

std::optional<BenchmarkId> parse_benchmark_id(std::string_view text) noexcept {
  for (const auto& r : kRows) {
    if (r.name == text) return r.id;
  }
  return std::nullopt;
}

BenchmarkSpec make_benchmark(BenchmarkId id, std::size_t dimension) {
  if (dimension == 0) throw ArgumentError("make_benchmark: dimension must be at least 1");
  const Row& r = row(id);
  return BenchmarkSpec{id, dimension, Bounds::uniform(r.lo, r.hi, dimension), 0.0,
                       id == BenchmarkId::f7};
}

double evaluate(const BenchmarkSpec& spec, std::span<const double> x, RngStream* noise) {
  if (x.size() != spec.dimension) {
    throw StructuralError("evaluate: expected " + std::to_string(spec.dimension) +
                          " coordinates, got " + std::to_string(x.size()));
  }
  if (!spec.bounds.contains(x)) {
    throw ArgumentError("evaluate: point outside the bounds of " + std::string(to_string(spec.id)));
  }
  if (spec.stochastic && noise == nullptr) {
    throw ArgumentError("evaluate: " + std::string(to_string(spec.id)) + " needs a noise stream");
  }
  switch (spec.id) {
    case BenchmarkId::f1: return sphere(x);
    case BenchmarkId::f2: return schwefel_2_22(x);
    case BenchmarkId::f3: return schwefel_1_2(x);
    case BenchmarkId::f4: return schwefel_2_21(x);
    case BenchmarkId::f5: return rosenbrock(x);
    case BenchmarkId::f6: return step(x);
    case BenchmarkId::f7: {
      const double value = quartic(x);
      return spec.stochastic ? value + noise->next_unit() : value;
    }
  }
  return 0.0;  // unreachable
}

BenchmarkSpec noiseless_variant(const BenchmarkSpec& spec) {
  BenchmarkSpec quiet = spec;
  quiet.stochastic = false;
  return quiet;
}

Problem make_problem(const BenchmarkSpec& spec) {
  std::string id(to_string(spec.id));
  if (spec.id == BenchmarkId::f7 && !spec.stochastic) id += "-noiseless";
  return Problem{std::move(id), spec.bounds, spec.f_min, spec.stochastic,
                 [spec](std::span<const double> x, RngStream* noise) {
                   return evaluate(spec, x, noise);
                 }};
}

ProblemRegistry::ProblemRegistry() {
  for (const auto id : kAllBenchmarks) {
    factories_.emplace(std::string(to_string(id)), [id](std::size_t dimension) {
      return make_problem(make_benchmark(id, dimension));
    });
  }
}

void ProblemRegistry::add(std::string name, Factory factory) {
  if (factories_.contains(name)) throw ConfigError("problem id '" + name + "' is already registered");
  factories_.emplace(std::move(name), std::move(factory));
}

bool ProblemRegistry::contains(std::string_view name) const { return factories_.find(name) != factories_.end(); }

Problem ProblemRegistry::make(std::string_view name, std::size_t dimension) const {
  const auto it = factories_.find(name);
  if (it == factories_.end()) throw ConfigError("unknown problem id '" + std::string(name) + "'");
  return it->second(dimension);
}

std::vector<std::string> ProblemRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(factories_.size());
  for (const auto& [name, factory] : factories_) out.push_back(name);
  return out;
}

}  // namespace sccsa
