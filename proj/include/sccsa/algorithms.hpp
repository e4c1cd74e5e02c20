#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sccsa/core.hpp"

namespace sccsa {

enum class Algorithm { sccsa, csa, sca, random_search };

/// "sccsa", "csa", "sca", "random".
std::string_view to_string(Algorithm algorithm) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept;

/// How the sine/cosine amplitude r1 and the ranges of r2, r3 are produced.
///
/// sca_original: r1 = a - t a / T (linear decay to 0), r2 in [0, 2 pi), r3 in [0, 2).
/// paper_literal: r1, r2, r3 all uniform in [0, 1), no decay.
enum class R1Mode { paper_literal, sca_original };

/// Difference term of the crow flight: |m - x| (paper_abs) or m - x (signed).
enum class DiffMode { paper_abs, signed_diff };

/// What the hybrid follows when it picks a random partner: its memory or its current position.
enum class PartnerTarget { memory, position };

std::string_view to_string(R1Mode mode) noexcept;
std::string_view to_string(DiffMode mode) noexcept;
std::string_view to_string(PartnerTarget target) noexcept;

struct CsaParams {
  double awareness_probability = 0.1;
  double flight_length = 2.0;
  DiffMode diff_mode = DiffMode::signed_diff;

  void validate() const;
};

struct ScaParams {
  R1Mode r1_mode = R1Mode::sca_original;
  double a = 2.0;

  void validate() const;
};

struct SccsaParams {
  double target_threshold = 0.5;
  double sine_threshold = 0.3;
  double cosine_threshold = 0.6;
  double flight_length = 2.0;
  R1Mode r1_mode = R1Mode::sca_original;
  double a = 2.0;
  DiffMode diff_mode = DiffMode::signed_diff;
  PartnerTarget partner_target = PartnerTarget::memory;

  void validate() const;
};

/// An algorithm together with all of its parameters. Only the block that
/// matches `kind` is used.
struct AlgorithmConfig {
  Algorithm kind = Algorithm::sccsa;
  CsaParams csa{};
  ScaParams sca{};
  SccsaParams sccsa{};

  std::string id() const { return std::string(to_string(kind)); }
  void validate() const;
};

// ---------------------------------------------------------------------------
// Movement operators. Pure functions of their inputs; no clamping.
// ---------------------------------------------------------------------------

/// Sine/cosine amplitude for iteration t of T. paper_literal consumes one
/// draw from `stream`; sca_original is deterministic. Requires t < T.
double amplitude_r1(R1Mode mode, double a, std::size_t t, std::size_t max_iterations, RngStream& stream);

/// x'[d] = x[d] + r1 * sin(r2[d]) * |r3[d] * target[d] - x[d]|  when r4 < 0.5,
/// with cos in place of sin otherwise.
Position sca_update(std::span<const double> x, std::span<const double> target, double r1,
                    const StepDraws& draws);

/// x' = x + r_flight * fl * |m - x|   (paper_abs)
/// x' = x + r_flight * fl * (m - x)   (signed)
Position csa_update(std::span<const double> x, std::span<const double> memory_target, double r_flight,
                    double flight_length, DiffMode diff_mode);

enum class SccsaBranch { sine, cosine, crow };

/// [0, sine) -> sine, [sine, cosine) -> cosine, [cosine, 1] -> crow flight.
SccsaBranch sccsa_branch(double r4, const SccsaParams& params) noexcept;

/// Hybrid move: the sine or cosine movement, or a crow flight of length
/// params.flight_length, all toward `target`. Never relocates at random.
Position sccsa_update(std::span<const double> x, std::span<const double> target, double r1,
                      const StepDraws& draws, const SccsaParams& params);

// ---------------------------------------------------------------------------
// Population
// ---------------------------------------------------------------------------

struct PopulationState {
  std::vector<Agent> agents;
  GlobalBest best;
  std::size_t iteration = 0;       ///< completed update steps
  std::size_t max_iterations = 0;  ///< steps the budget allows after initialization
  std::size_t fe_count = 0;
  std::size_t budget_fe = 0;
};

/// Target for agent `agent_index`: the global best when r_select < threshold,
/// otherwise the partner's memory (or current position, per params.partner_target).
const Position& select_target(const PopulationState& state, std::size_t agent_index, double r_select,
                              std::size_t partner_index, const SccsaParams& params = {});

/// Moves the agent to new_pos; the memory follows only on strict improvement.
Agent update_memory(Agent agent, Position new_pos, double new_fit);

/// Uniform initialization of pop_size agents; consumes pop_size evaluations.
/// T = budget_fe / pop_size - 1 further steps fit in the budget.
PopulationState initialize_population(const Problem& problem, std::size_t pop_size,
                                      std::size_t budget_fe, RngStream& stream);

// One synchronous iteration each: every agent moves from the state at the
// start of the step, then all moves are evaluated in agent order, then the
// global best is refreshed (first strictly better memory wins).
void csa_step(PopulationState& state, const Problem& problem, const CsaParams& params, RngStream& stream);
void sca_step(PopulationState& state, const Problem& problem, const ScaParams& params, RngStream& stream);
void sccsa_step(PopulationState& state, const Problem& problem, const SccsaParams& params,
                RngStream& stream);
void random_search_step(PopulationState& state, const Problem& problem, RngStream& stream);

void step(PopulationState& state, const Problem& problem, const AlgorithmConfig& config, RngStream& stream);

/// One seeded optimization run.
struct RunRecord {
  std::uint64_t seed = 0;
  std::string algorithm_id;
  std::string problem_id;
  std::size_t run_index = 0;
  /// Best-so-far fitness after initialization (index 0) and after every step.
  std::vector<double> trace;
  double final_best_fitness = 0.0;
  Position final_best_position;
  std::size_t fe_count = 0;
  std::chrono::nanoseconds wall_time{0};
};

inline constexpr std::size_t kDefaultPopulation = 30;
inline constexpr std::size_t kDefaultBudget = 100'000;

/// Initializes, then steps until the budget is spent. Throws ConfigError when
/// pop_size < 2 or budget_fe < pop_size.
RunRecord run(const Problem& problem, const AlgorithmConfig& config, std::size_t pop_size,
              std::size_t budget_fe, std::uint64_t seed);

}  // namespace sccsa
