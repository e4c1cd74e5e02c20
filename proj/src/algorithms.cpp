#include "sccsa/algorithms.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sccsa/error.hpp"

namespace sccsa {

namespace {

void require_same_size(std::span<const double> a, std::span<const double> b, const char* op) {
  if (a.size() != b.size()) {
    throw StructuralError(std::string(op) + ": dimension mismatch (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
  }
}

Position sine_cosine_move(std::span<const double> x, std::span<const double> target, double r1,
                          const StepDraws& draws, bool use_sine) {
  require_same_size(x, target, "sine/cosine move");
  if (draws.r2.size() != x.size() || draws.r3.size() != x.size()) {
    throw StructuralError("sine/cosine move: r2 and r3 need one draw per dimension");
  }
  Position out(x.begin(), x.end());
  for (std::size_t d = 0; d < out.size(); ++d) {
    const double wave = use_sine ? std::sin(draws.r2[d]) : std::cos(draws.r2[d]);
    out[d] = x[d] + r1 * wave * std::abs(draws.r3[d] * target[d] - x[d]);
  }
  return out;
}

// Draw order for one agent is part of the reproducibility contract:
// [r1 if paper_literal], r2[0..n), r3[0..n).
void draw_wave_terms(StepDraws& draws, R1Mode mode, std::size_t dimension, RngStream& stream) {
  const double r2_hi = mode == R1Mode::sca_original ? 2.0 * std::numbers::pi : 1.0;
  const double r3_hi = mode == R1Mode::sca_original ? 2.0 : 1.0;
  draws.r2.resize(dimension);
  draws.r3.resize(dimension);
  for (auto& v : draws.r2) v = stream.next_uniform(0.0, r2_hi);
  for (auto& v : draws.r3) v = stream.next_uniform(0.0, r3_hi);
}

std::size_t draw_partner(std::size_t self, std::size_t population, RngStream& stream) {
  const std::size_t j = stream.next_index(population - 1);
  return j >= self ? j + 1 : j;
}

void require_step_budget(const PopulationState& state) {
  if (state.agents.size() < 2) throw ConfigError("population size must be at least 2");
  if (state.iteration >= state.max_iterations || state.fe_count + state.agents.size() > state.budget_fe) {
    throw ConfigError("step: evaluation budget exhausted");
  }
}

// Evaluate every proposal in agent order, then refresh the global best.
void commit(PopulationState& state, const Problem& problem, std::vector<Position>& proposals,
            RngStream& stream) {
  for (std::size_t i = 0; i < state.agents.size(); ++i) {
    const double fit = problem.evaluate(proposals[i], stream);
    state.agents[i] = update_memory(std::move(state.agents[i]), std::move(proposals[i]), fit);
  }
  state.fe_count += state.agents.size();
  for (const auto& agent : state.agents) {
    if (agent.memory_fitness < state.best.fitness) {
      state.best.fitness = agent.memory_fitness;
      state.best.position = agent.memory;
    }
  }
  ++state.iteration;
}

}  // namespace

std::string_view to_string(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::sccsa: return "sccsa";
    case Algorithm::csa: return "csa";
    case Algorithm::sca: return "sca";
    case Algorithm::random_search: return "random";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept {
  for (const auto a : {Algorithm::sccsa, Algorithm::csa, Algorithm::sca, Algorithm::random_search}) {
    if (to_string(a) == text) return a;
  }
  return std::nullopt;
}

std::string_view to_string(R1Mode mode) noexcept {
  return mode == R1Mode::sca_original ? "sca" : "paper";
}

std::string_view to_string(DiffMode mode) noexcept {
  return mode == DiffMode::paper_abs ? "abs" : "signed";
}

std::string_view to_string(PartnerTarget target) noexcept {
  return target == PartnerTarget::memory ? "memory" : "position";
}

void CsaParams::validate() const {
  if (!(awareness_probability >= 0.0 && awareness_probability <= 1.0)) {
    throw ConfigError("csa: awareness probability must lie in [0, 1]");
  }
  if (!(flight_length > 0.0)) throw ConfigError("csa: flight length must be positive");
}

void ScaParams::validate() const {
  if (!(a > 0.0)) throw ConfigError("sca: amplitude ceiling a must be positive");
}

void SccsaParams::validate() const {
  if (!(target_threshold >= 0.0 && target_threshold <= 1.0)) {
    throw ConfigError("sccsa: target threshold must lie in [0, 1]");
  }
  if (!(sine_threshold >= 0.0 && sine_threshold <= cosine_threshold && cosine_threshold <= 1.0)) {
    throw ConfigError("sccsa: need 0 <= sine threshold <= cosine threshold <= 1");
  }
  if (!(flight_length > 0.0)) throw ConfigError("sccsa: flight length must be positive");
  if (!(a > 0.0)) throw ConfigError("sccsa: amplitude ceiling a must be positive");
}

void AlgorithmConfig::validate() const {
  switch (kind) {
    case Algorithm::sccsa: sccsa.validate(); break;
    case Algorithm::csa: csa.validate(); break;
    case Algorithm::sca: sca.validate(); break;
    case Algorithm::random_search: break;
  }
}

double amplitude_r1(R1Mode mode, double a, std::size_t t, std::size_t max_iterations, RngStream& stream) {
  if (t >= max_iterations) throw ArgumentError("amplitude_r1: iteration must be below the iteration count");
  if (mode == R1Mode::paper_literal) return stream.next_unit();
  return a - static_cast<double>(t) * a / static_cast<double>(max_iterations);
}

Position sca_update(std::span<const double> x, std::span<const double> target, double r1,
                    const StepDraws& draws) {
  return sine_cosine_move(x, target, r1, draws, draws.r4 < 0.5);
}

Position csa_update(std::span<const double> x, std::span<const double> memory_target, double r_flight,
                    double flight_length, DiffMode diff_mode) {
  require_same_size(x, memory_target, "csa_update");
  Position out(x.begin(), x.end());
  const double scale = r_flight * flight_length;
  for (std::size_t d = 0; d < out.size(); ++d) {
    const double diff = memory_target[d] - x[d];
    out[d] = x[d] + scale * (diff_mode == DiffMode::paper_abs ? std::abs(diff) : diff);
  }
  return out;
}

SccsaBranch sccsa_branch(double r4, const SccsaParams& params) noexcept {
  if (r4 < params.sine_threshold) return SccsaBranch::sine;
  if (r4 < params.cosine_threshold) return SccsaBranch::cosine;
  return SccsaBranch::crow;
}

Position sccsa_update(std::span<const double> x, std::span<const double> target, double r1,
                      const StepDraws& draws, const SccsaParams& params) {
  switch (sccsa_branch(draws.r4, params)) {
    case SccsaBranch::sine: return sine_cosine_move(x, target, r1, draws, true);
    case SccsaBranch::cosine: return sine_cosine_move(x, target, r1, draws, false);
    case SccsaBranch::crow: break;
  }
  return csa_update(x, target, draws.r_flight, params.flight_length, params.diff_mode);
}

const Position& select_target(const PopulationState& state, std::size_t agent_index, double r_select,
                              std::size_t partner_index, const SccsaParams& params) {
  if (partner_index >= state.agents.size() || partner_index == agent_index) {
    throw ArgumentError("select_target: partner must be another agent of the population");
  }
  if (r_select < params.target_threshold) return state.best.position;
  const Agent& partner = state.agents[partner_index];
  return params.partner_target == PartnerTarget::memory ? partner.memory : partner.position;
}

Agent update_memory(Agent agent, Position new_pos, double new_fit) {
  agent.position = std::move(new_pos);
  agent.fitness = new_fit;
  if (new_fit < agent.memory_fitness) {
    agent.memory = agent.position;
    agent.memory_fitness = new_fit;
  }
  return agent;
}

PopulationState initialize_population(const Problem& problem, std::size_t pop_size, std::size_t budget_fe,
                                      RngStream& stream) {
  if (pop_size < 2) throw ConfigError("population size must be at least 2");
  if (budget_fe < pop_size) {
    throw ConfigError("budget of " + std::to_string(budget_fe) + " evaluations is below the population size " +
                      std::to_string(pop_size));
  }
  PopulationState state;
  state.budget_fe = budget_fe;
  state.max_iterations = budget_fe / pop_size - 1;
  state.agents.resize(pop_size);
  for (auto& agent : state.agents) agent.position = random_position(problem.bounds, stream);
  for (auto& agent : state.agents) {
    agent.fitness = problem.evaluate(agent.position, stream);
    agent.memory = agent.position;
    agent.memory_fitness = agent.fitness;
    if (agent.memory_fitness < state.best.fitness) {
      state.best.fitness = agent.memory_fitness;
      state.best.position = agent.memory;
    }
  }
  state.fe_count = pop_size;
  // Objectives returning NaN/inf everywhere still need a defined best.
  if (state.best.position.empty()) state.best.position = state.agents.front().memory;
  return state;
}

void csa_step(PopulationState& state, const Problem& problem, const CsaParams& params, RngStream& stream) {
  require_step_budget(state);
  const std::size_t n = state.agents.size();
  std::vector<Position> proposals(n);
  // Per agent: partner, awareness_draw, r_flight, then dimension() draws
  // only when the agent relocates.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = draw_partner(i, n, stream);
    const double awareness_draw = stream.next_unit();
    const double r_flight = stream.next_unit();
    const Agent& self = state.agents[i];
    if (awareness_draw >= params.awareness_probability) {
      proposals[i] = clamp_to_bounds(
          csa_update(self.position, state.agents[j].memory, r_flight, params.flight_length, params.diff_mode),
          problem.bounds);
    } else {
      proposals[i] = random_position(problem.bounds, stream);
    }
  }
  commit(state, problem, proposals, stream);
}

void sca_step(PopulationState& state, const Problem& problem, const ScaParams& params, RngStream& stream) {
  require_step_budget(state);
  const std::size_t n = state.agents.size();
  const double decayed = params.r1_mode == R1Mode::sca_original
                             ? amplitude_r1(params.r1_mode, params.a, state.iteration, state.max_iterations, stream)
                             : 0.0;
  std::vector<Position> proposals(n);
  StepDraws draws;
  // Per agent: [r1], r4, r2[], r3[].
  for (std::size_t i = 0; i < n; ++i) {
    const double r1 = params.r1_mode == R1Mode::paper_literal
                          ? amplitude_r1(params.r1_mode, params.a, state.iteration, state.max_iterations, stream)
                          : decayed;
    draws.r4 = stream.next_unit();
    draw_wave_terms(draws, params.r1_mode, problem.dimension(), stream);
    proposals[i] = clamp_to_bounds(sca_update(state.agents[i].position, state.best.position, r1, draws),
                                   problem.bounds);
  }
  commit(state, problem, proposals, stream);
}

void sccsa_step(PopulationState& state, const Problem& problem, const SccsaParams& params, RngStream& stream) {
  require_step_budget(state);
  const std::size_t n = state.agents.size();
  const double decayed = params.r1_mode == R1Mode::sca_original
                             ? amplitude_r1(params.r1_mode, params.a, state.iteration, state.max_iterations, stream)
                             : 0.0;
  std::vector<Position> proposals(n);
  StepDraws draws;
  // Per agent: [r1], partner, r_select, r4, r_flight, r2[], r3[].
  for (std::size_t i = 0; i < n; ++i) {
    draws.r1 = params.r1_mode == R1Mode::paper_literal
                   ? amplitude_r1(params.r1_mode, params.a, state.iteration, state.max_iterations, stream)
                   : decayed;
    const std::size_t j = draw_partner(i, n, stream);
    draws.r_select = stream.next_unit();
    draws.r4 = stream.next_unit();
    draws.r_flight = stream.next_unit();
    draw_wave_terms(draws, params.r1_mode, problem.dimension(), stream);
    const Position& target = select_target(state, i, draws.r_select, j, params);
    proposals[i] = clamp_to_bounds(sccsa_update(state.agents[i].position, target, draws.r1, draws, params),
                                   problem.bounds);
  }
  commit(state, problem, proposals, stream);
}

void random_search_step(PopulationState& state, const Problem& problem, RngStream& stream) {
  require_step_budget(state);
  std::vector<Position> proposals(state.agents.size());
  for (auto& p : proposals) p = random_position(problem.bounds, stream);
  commit(state, problem, proposals, stream);
}

void step(PopulationState& state, const Problem& problem, const AlgorithmConfig& config, RngStream& stream) {
  switch (config.kind) {
    case Algorithm::sccsa: sccsa_step(state, problem, config.sccsa, stream); break;
    case Algorithm::csa: csa_step(state, problem, config.csa, stream); break;
    case Algorithm::sca: sca_step(state, problem, config.sca, stream); break;
    case Algorithm::random_search: random_search_step(state, problem, stream); break;
  }
}

RunRecord run(const Problem& problem, const AlgorithmConfig& config, std::size_t pop_size, std::size_t budget_fe,
              std::uint64_t seed) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  RngStream stream(seed);
  PopulationState state = initialize_population(problem, pop_size, budget_fe, stream);

  RunRecord record;
  record.seed = seed;
  record.algorithm_id = config.id();
  record.problem_id = problem.id;
  record.trace.reserve(state.max_iterations + 1);
  record.trace.push_back(state.best.fitness);
  while (state.iteration < state.max_iterations) {
    step(state, problem, config, stream);
    record.trace.push_back(state.best.fitness);
  }
  record.final_best_fitness = state.best.fitness;
  record.final_best_position = state.best.position;
  record.fe_count = state.fe_count;
  record.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - started);
  return record;
}

}  // namespace sccsa
