#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sccsa/rng.hpp"

namespace sccsa {

/// Coordinates of one candidate solution.
using Position = std::vector<double>;

/// Axis-aligned search box. lower[d] < upper[d] for every dimension.
class Bounds {
 public:
  Bounds(std::vector<double> lower, std::vector<double> upper);

  /// The same [lo, hi] interval repeated over `dimension` axes.
  static Bounds uniform(double lo, double hi, std::size_t dimension);

  std::size_t dimension() const noexcept { return lower_.size(); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }

  bool contains(std::span<const double> p) const;

  friend bool operator==(const Bounds&, const Bounds&) = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Clamp every coordinate into its interval; in-range coordinates are untouched.
/// Throws StructuralError on a dimension mismatch.
Position clamp_to_bounds(Position p, const Bounds& bounds);

/// A uniformly random point inside the box (one draw per dimension, in order).
Position random_position(const Bounds& bounds, RngStream& stream);

/// Objective callable. `noise` is non-null only for stochastic problems.
using Objective = std::function<double(std::span<const double> x, RngStream* noise)>;

/// Something to minimize over a box.
struct Problem {
  std::string id;
  Bounds bounds;
  std::optional<double> known_min;
  bool stochastic = false;
  Objective objective;

  std::size_t dimension() const noexcept { return bounds.dimension(); }

  /// Evaluates the objective, routing the stream only to stochastic objectives.
  double evaluate(std::span<const double> x, RngStream& stream) const;
};

/// One search agent ("crow"): current point plus the best point it has visited.
struct Agent {
  Position position;
  double fitness = std::numeric_limits<double>::infinity();
  Position memory;
  double memory_fitness = std::numeric_limits<double>::infinity();
};

struct GlobalBest {
  Position position;
  double fitness = std::numeric_limits<double>::infinity();
};

/// Random numbers consumed by one agent update.
///
/// `r_select` picks the target (best vs. partner), `r1` is the movement
/// amplitude, `r2`/`r3` are per-dimension, `r4` picks the movement operator,
/// `r_flight` scales the crow flight and `awareness_draw` is compared against
/// the awareness probability in plain crow search.
struct StepDraws {
  double r_select = 0.0;
  double r1 = 0.0;
  std::vector<double> r2;
  std::vector<double> r3;
  double r4 = 0.0;
  double r_flight = 0.0;
  double awareness_draw = 0.0;
};

}  // namespace sccsa
