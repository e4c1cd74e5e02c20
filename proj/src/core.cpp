#include "sccsa/core.hpp"

#include <algorithm>
#include <string>

#include "sccsa/error.hpp"

namespace sccsa {

Bounds::Bounds(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw ArgumentError("Bounds: dimension must be at least 1");
  if (lower_.size() != upper_.size()) {
    throw StructuralError("Bounds: lower and upper have different lengths");
  }
  for (std::size_t d = 0; d < lower_.size(); ++d) {
    if (!(lower_[d] < upper_[d])) {
      throw ArgumentError("Bounds: lower[" + std::to_string(d) + "] is not below upper");
    }
  }
}

Bounds Bounds::uniform(double lo, double hi, std::size_t dimension) {
  return Bounds(std::vector<double>(dimension, lo), std::vector<double>(dimension, hi));
}

bool Bounds::contains(std::span<const double> p) const {
  if (p.size() != dimension()) return false;
  for (std::size_t d = 0; d < p.size(); ++d) {
    if (!(p[d] >= lower_[d] && p[d] <= upper_[d])) return false;
  }
  return true;
}

Position clamp_to_bounds(Position p, const Bounds& bounds) {
  if (p.size() != bounds.dimension()) {
    throw StructuralError("clamp_to_bounds: position has " + std::to_string(p.size()) +
                          " coordinates, bounds have " + std::to_string(bounds.dimension()));
  }
  for (std::size_t d = 0; d < p.size(); ++d) {
    p[d] = std::clamp(p[d], bounds.lower()[d], bounds.upper()[d]);
  }
  return p;
}

Position random_position(const Bounds& bounds, RngStream& stream) {
  Position p(bounds.dimension());
  for (std::size_t d = 0; d < p.size(); ++d) {
    p[d] = stream.next_uniform(bounds.lower()[d], bounds.upper()[d]);
  }
  return p;
}

double Problem::evaluate(std::span<const double> x, RngStream& stream) const {
  return objective(x, stochastic ? &stream : nullptr);
}

}  // namespace sccsa
