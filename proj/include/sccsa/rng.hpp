#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace sccsa {

/// Reproducible random stream backed by SplitMix64.
///
/// SplitMix64 is a counter-based generator: the state is a 64-bit Weyl
/// counter advanced by a fixed odd increment and every output is a bijective
/// mix of the counter. The output sequence depends only on the seed, so a
/// seed reproduces the same draws on every platform and compiler. Uniform
/// reals are built from the top 53 bits, never through
/// std::uniform_real_distribution (whose algorithm is implementation defined).
///
/// A stream is single-owner: one run uses one stream at a time.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) noexcept : seed_(seed), state_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Raw 64-bit output.
  std::uint64_t next_u64() noexcept;

  /// Uniform in [0, 1) with 53 bits of resolution.
  double next_unit() noexcept;

  /// Uniform in [lo, hi). Throws ArgumentError unless lo < hi.
  double next_uniform(double lo, double hi);

  /// Uniform integer in [0, n). Throws ArgumentError when n == 0.
  std::size_t next_index(std::size_t n);

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a hash of a byte string.
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// Seed of one run inside an experiment cell.
///
/// seed = mix64(base_seed ^ fnv1a64("<problem>/<algorithm>/<run_index>")).
/// Each run depends only on its own cell key, so adding or removing cells
/// never changes the seeds of other cells.
std::uint64_t derive_run_seed(std::uint64_t base_seed, std::string_view problem_id,
                              std::string_view algorithm_id, std::size_t run_index);

}  // namespace sccsa
