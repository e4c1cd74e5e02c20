#include "sccsa/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "sccsa/error.hpp"

namespace sccsa {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string format_short(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5E", value);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

double parse_double(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) throw IoError(where + ": '" + t + "' is not a number");
  return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw IoError(where + ": '" + t + "' is not a non-negative integer");
  }
  try {
    return std::stoull(t);
  } catch (const std::exception&) {
    throw IoError(where + ": '" + t + "' is out of range");
  }
}

constexpr std::array<const char*, 4> kStatNames = {"Ave", "Sdev", "Max", "Min"};

double stat_value(const SummaryStats& s, std::size_t k) {
  switch (k) {
    case 0: return s.ave;
    case 1: return s.sdev;
    case 2: return s.max;
    default: return s.min;
  }
}

}  // namespace

std::string format_full(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17e", value);
  return buf;
}

void ExperimentPlan::validate() const {
  if (problems.empty()) throw ConfigError("experiment plan has no problems");
  if (algorithms.empty()) throw ConfigError("experiment plan has no algorithms");
  if (runs_per_cell < 1) throw ConfigError("runs per cell must be at least 1");
  if (pop_size < 2) throw ConfigError("population size must be at least 2");
  if (budget_fe < pop_size) throw ConfigError("budget must be at least the population size");
  std::set<std::string> seen;
  for (const auto& p : problems) {
    if (!seen.insert(p.id).second) throw ConfigError("problem '" + p.id + "' appears twice in the plan");
  }
  seen.clear();
  for (const auto& a : algorithms) {
    a.validate();
    if (!seen.insert(a.id()).second) throw ConfigError("algorithm '" + a.id() + "' appears twice in the plan");
  }
}

ExperimentPlan resolve_plan(const PlanRequest& request, const ProblemRegistry& registry) {
  ExperimentPlan plan;
  for (const auto& id : request.problem_ids) plan.problems.push_back(registry.make(id, request.dimension));
  for (const auto& id : request.algorithm_ids) {
    const auto kind = parse_algorithm(id);
    if (!kind) throw ConfigError("unknown algorithm id '" + id + "'");
    AlgorithmConfig config;
    config.kind = *kind;
    config.sca.r1_mode = request.r1_mode;
    config.sccsa.r1_mode = request.r1_mode;
    config.csa.diff_mode = request.diff_mode;
    config.sccsa.diff_mode = request.diff_mode;
    plan.algorithms.push_back(config);
  }
  plan.runs_per_cell = request.runs_per_cell;
  plan.budget_fe = request.budget_fe;
  plan.base_seed = request.base_seed;
  plan.pop_size = request.pop_size;
  plan.validate();
  return plan;
}

std::vector<RunRecord> run_experiment(const ExperimentPlan& plan, std::size_t jobs) {
  plan.validate();

  struct Task {
    std::size_t problem;
    std::size_t algorithm;
    std::size_t run_index;
  };
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < plan.problems.size(); ++p) {
    for (std::size_t a = 0; a < plan.algorithms.size(); ++a) {
      for (std::size_t r = 0; r < plan.runs_per_cell; ++r) tasks.push_back({p, a, r});
    }
  }

  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const Task& task = tasks[k];
      const Problem& problem = plan.problems[task.problem];
      const AlgorithmConfig& algorithm = plan.algorithms[task.algorithm];
      try {
        const auto seed = derive_run_seed(plan.base_seed, problem.id, algorithm.id(), task.run_index);
        records[k] = run(problem, algorithm, plan.pop_size, plan.budget_fe, seed);
        records[k].run_index = task.run_index;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(tasks.size(), 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

SummaryStats summarize_values(std::span<const double> finals) {
  if (finals.empty()) throw ArgumentError("summarize: no values");
  SummaryStats s;
  s.n = finals.size();
  double sum = 0.0;
  for (const double v : finals) sum += v;
  s.ave = sum / static_cast<double>(s.n);
  const auto [lo, hi] = std::minmax_element(finals.begin(), finals.end());
  s.min = *lo;
  s.max = *hi;
  if (s.n > 1) {
    double ss = 0.0;
    for (const double v : finals) ss += (v - s.ave) * (v - s.ave);
    s.sdev = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  // The mean of identical values can round one ulp outside [min, max].
  s.ave = std::clamp(s.ave, s.min, s.max);
  return s;
}

SummaryStats summarize(std::span<const RunRecord> records) {
  if (records.empty()) throw ArgumentError("summarize: no records");
  std::vector<double> finals;
  finals.reserve(records.size());
  for (const auto& r : records) {
    if (r.problem_id != records.front().problem_id || r.algorithm_id != records.front().algorithm_id) {
      throw ArgumentError("summarize: records mix cells (" + records.front().problem_id + "/" +
                          records.front().algorithm_id + " and " + r.problem_id + "/" + r.algorithm_id + ")");
    }
    finals.push_back(r.final_best_fitness);
  }
  return summarize_values(finals);
}

std::vector<CellSummary> summarize_cells(std::span<const RunRecord> records) {
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<RunRecord>> groups;
  for (const auto& r : records) {
    auto key = std::make_pair(r.problem_id, r.algorithm_id);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(r);
  }
  std::vector<CellSummary> out;
  out.reserve(order.size());
  for (const auto& key : order) out.push_back({key.first, key.second, summarize(groups.at(key))});
  return out;
}

std::vector<ReferenceValue> read_reference_table(std::istream& in) {
  std::vector<ReferenceValue> out;
  std::string line;
  std::size_t row = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    auto fields = split_csv_line(line);
    if (header) {
      header = false;
      if (fields.size() == 4 && lower(trim(fields[0])) == "function") continue;
    }
    if (fields.size() != 4) {
      throw IoError("reference table row " + std::to_string(row) + ": expected 4 fields, got " +
                    std::to_string(fields.size()));
    }
    out.push_back({trim(fields[0]), trim(fields[1]), trim(fields[2]), trim(fields[3])});
  }
  return out;
}

std::vector<ReferenceValue> read_reference_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open reference table '" + path.string() + "'");
  return read_reference_table(in);
}

Report comparison_report(std::span<const CellSummary> cells, std::span<const ReferenceValue> reference) {
  if (cells.empty()) throw ArgumentError("comparison_report: no cells");

  std::vector<std::string> functions;
  std::vector<std::string> measured;
  std::vector<std::string> published;
  auto remember = [](std::vector<std::string>& list, const std::string& v) {
    if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
  };
  std::map<std::pair<std::string, std::string>, const SummaryStats*> by_cell;
  for (const auto& c : cells) {
    remember(functions, lower(c.problem_id));
    remember(measured, c.algorithm_id);
    by_cell[{lower(c.problem_id), c.algorithm_id}] = &c.stats;
  }
  std::map<std::tuple<std::string, std::string, std::string>, std::string> ref;
  for (const auto& r : reference) {
    remember(functions, lower(r.function));
    remember(published, r.algorithm);
    ref[{lower(r.function), r.algorithm, lower(r.stat)}] = r.value;
  }

  std::size_t runs = cells.front().stats.n;
  bool uniform_runs = true;
  for (const auto& c : cells) uniform_runs = uniform_runs && c.stats.n == runs;

  std::ostringstream md;
  md << "# Statistical results\n\n";
  md << "Final best fitness per cell over "
     << (uniform_runs ? std::to_string(runs) : std::string("varying numbers of")) << " runs. "
     << "Ave = mean, Sdev = sample standard deviation (n-1 denominator), "
     << "Max = worst final, Min = best final.\n";
  if (!published.empty()) {
    md << "Columns marked [published] are reference values copied verbatim; "
       << "they are published, not reproduced by this run.\n";
  }
  md << "\n| Function | Stat |";
  for (const auto& a : measured) md << ' ' << a << " |";
  for (const auto& a : published) md << ' ' << a << " [published] |";
  md << "\n|---|---|";
  for (std::size_t i = 0; i < measured.size() + published.size(); ++i) md << "---|";
  md << '\n';

  std::ostringstream csv;
  csv << "function,algorithm,stat,value,source\n";

  for (const auto& fn : functions) {
    for (std::size_t k = 0; k < kStatNames.size(); ++k) {
      const std::string stat = kStatNames[k];
      md << "| " << (k == 0 ? fn : std::string()) << " | " << stat << " |";
      for (const auto& a : measured) {
        const auto it = by_cell.find({fn, a});
        if (it == by_cell.end()) {
          md << " - |";
          continue;
        }
        const double v = stat_value(*it->second, k);
        md << ' ' << format_short(v) << " |";
        csv << fn << ',' << a << ',' << stat << ',' << format_full(v) << ",measured\n";
      }
      for (const auto& a : published) {
        const auto it = ref.find({fn, a, lower(stat)});
        if (it == ref.end()) {
          md << " - |";
          continue;
        }
        md << ' ' << it->second << " |";
        csv << fn << ',' << a << ',' << stat << ',' << it->second << ",published\n";
      }
      md << '\n';
    }
  }
  return Report{md.str(), csv.str()};
}

std::vector<std::filesystem::path> export_convergence(std::span<const RunRecord> records,
                                                      const std::filesystem::path& dir) {
  if (records.empty()) throw ArgumentError("export_convergence: no records");

  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<const RunRecord*>> groups;
  for (const auto& r : records) {
    auto key = std::make_pair(r.problem_id, r.algorithm_id);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());

  std::vector<std::filesystem::path> written;
  for (const auto& key : order) {
    auto runs = groups.at(key);
    std::stable_sort(runs.begin(), runs.end(),
                     [](const RunRecord* a, const RunRecord* b) { return a->run_index < b->run_index; });
    const std::size_t length = runs.front()->trace.size();
    for (const auto* r : runs) {
      if (r->trace.size() != length) {
        throw ArgumentError("export_convergence: traces of " + key.first + "/" + key.second +
                            " have different lengths");
      }
    }

    std::string out = "iteration";
    for (std::size_t i = 0; i < runs.size(); ++i) out += ",run_" + std::to_string(runs[i]->run_index);
    out += ",mean\n";
    for (std::size_t k = 0; k < length; ++k) {
      out += std::to_string(k);
      double sum = 0.0;
      for (const auto* r : runs) {
        out += ',';
        out += format_full(r->trace[k]);
        sum += r->trace[k];
      }
      out += ',';
      out += format_full(sum / static_cast<double>(runs.size()));
      out += '\n';
    }
    const auto path = dir / (key.first + "_" + key.second + ".csv");
    write_file(path, out);
    written.push_back(path);
  }
  return written;
}

void write_finals_csv(std::span<const RunRecord> records, const std::filesystem::path& path) {
  std::string out = "problem,algorithm,run_index,seed,fe_count,final_best_fitness\n";
  for (const auto& r : records) {
    out += r.problem_id + ',' + r.algorithm_id + ',' + std::to_string(r.run_index) + ',' + std::to_string(r.seed) +
           ',' + std::to_string(r.fe_count) + ',' + format_full(r.final_best_fitness) + '\n';
  }
  write_file(path, out);
}

std::vector<RunRecord> read_finals_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open finals file '" + path.string() + "'");
  std::vector<RunRecord> out;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (row == 1 || trim(line).empty()) continue;
    const auto f = split_csv_line(line);
    const std::string where = path.filename().string() + " row " + std::to_string(row);
    if (f.size() != 6) throw IoError(where + ": expected 6 fields, got " + std::to_string(f.size()));
    RunRecord r;
    r.problem_id = trim(f[0]);
    r.algorithm_id = trim(f[1]);
    r.run_index = parse_u64(f[2], where);
    r.seed = parse_u64(f[3], where);
    r.fe_count = parse_u64(f[4], where);
    r.final_best_fitness = parse_double(f[5], where);
    out.push_back(std::move(r));
  }
  if (out.empty()) throw IoError("finals file '" + path.string() + "' has no records");
  return out;
}

}  // namespace sccsa
