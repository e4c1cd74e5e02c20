#include "sccsa/rng.hpp"

#include <cmath>
#include <string>

#include "sccsa/error.hpp"

namespace sccsa {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPowMinus53 = 0x1.0p-53;
}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t RngStream::next_u64() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

double RngStream::next_unit() noexcept {
  return static_cast<double>(next_u64() >> 11) * kTwoPowMinus53;
}

double RngStream::next_uniform(double lo, double hi) {
  if (!(lo < hi)) {
    throw ArgumentError("next_uniform: lower bound must be below upper bound");
  }
  const double value = lo + (hi - lo) * next_unit();
  // lo + span * u can round up to hi for wide or offset intervals.
  return value < hi ? value : std::nextafter(hi, lo);
}

std::size_t RngStream::next_index(std::size_t n) {
  if (n == 0) throw ArgumentError("next_index: empty range");
  const auto index = static_cast<std::size_t>(next_unit() * static_cast<double>(n));
  return index < n ? index : n - 1;
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (const char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::uint64_t derive_run_seed(std::uint64_t base_seed, std::string_view problem_id,
                              std::string_view algorithm_id, std::size_t run_index) {
  std::string key;
  key.reserve(problem_id.size() + algorithm_id.size() + 24);
  key.append(problem_id).append("/").append(algorithm_id).append("/").append(std::to_string(run_index));
  return mix64(base_seed ^ fnv1a64(key));
}

}  // namespace sccsa
