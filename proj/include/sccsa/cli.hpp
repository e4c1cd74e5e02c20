#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sccsa/algorithms.hpp"

namespace sccsa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;

/// Environment variable holding the default output directory.
inline constexpr const char* kOutDirEnv = "SCCSA_OUT_DIR";
inline constexpr const char* kDefaultOutDir = "sccsa-out";

/// Raw key -> value settings. Keys: algo, fn, dim, pop, budget, runs, seed,
/// jobs, r1_mode, csa_diff, out, reference.
using Settings = std::map<std::string, std::string>;

/// Reads `key = value` lines; blank lines and lines starting with '#' are
/// skipped. Unknown keys or malformed lines throw ConfigError.
Settings parse_config_text(std::istream& in);

/// Settings with every default resolved and typed.
struct EffectiveConfig {
  std::vector<std::string> algorithms;
  std::vector<std::string> functions;
  std::size_t dimension = 10;
  std::size_t pop_size = kDefaultPopulation;
  std::size_t budget_fe = kDefaultBudget;
  std::size_t runs = 30;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  R1Mode r1_mode = R1Mode::sca_original;
  DiffMode diff_mode = DiffMode::signed_diff;
  std::string out_dir;
  std::string reference;

  /// `key = value` lines, sorted by key; feeding them back as a config file
  /// reproduces the invocation.
  std::string banner() const;
};

/// Types and validates merged settings. Throws ConfigError.
EffectiveConfig resolve_settings(const Settings& settings);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sccsa::cli
