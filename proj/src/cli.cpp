#include "sccsa/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "sccsa/benchmarks.hpp"
#include "sccsa/error.hpp"
#include "sccsa/harness.hpp"
#include "sccsa/plot.hpp"

namespace sccsa::cli {

namespace {

namespace fs = std::filesystem;

const std::set<std::string> kKeys = {"algo", "fn", "dim", "pop", "budget", "runs", "seed",
                                     "jobs", "r1_mode", "csa_diff", "out", "reference"};

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ',';
    out += item;
  }
  return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ConfigError(key + ": '" + text + "' is not a non-negative integer");
  }
  try {
    return std::stoull(t);
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + text + "' is out of range");
  }
}

void set_key(Settings& settings, const std::string& key, const std::string& value) {
  if (!kKeys.contains(key)) throw ConfigError("unknown setting '" + key + "'");
  settings[key] = value;
}

std::size_t default_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Command-line values shared by run and bench.
struct Flags {
  std::string config_path;
  std::vector<std::string> overrides;
  Settings explicit_values;
};

void add_experiment_flags(CLI::App& cmd, Flags& flags) {
  cmd.add_option("--config", flags.config_path, "Flat key=value config file");
  cmd.add_option("--set", flags.overrides, "Override a setting, key=value (repeatable)");
  const std::vector<std::pair<std::string, std::string>> options = {
      {"--algo", "algo"},       {"--fn", "fn"},       {"--dim", "dim"},   {"--pop", "pop"},
      {"--budget", "budget"},   {"--runs", "runs"},   {"--seed", "seed"}, {"--jobs", "jobs"},
      {"--r1-mode", "r1_mode"}, {"--csa-diff", "csa_diff"}, {"--out", "out"}, {"--reference", "reference"}};
  for (const auto& [flag, key] : options) {
    cmd.add_option_function<std::string>(
        flag, [&flags, key = key](const std::string& v) { flags.explicit_values[key] = v; }, "Setting '" + key + "'");
  }
}

// defaults < environment < config file < flags < --set
Settings merge_settings(Settings defaults, const Flags& flags) {
  Settings settings = std::move(defaults);
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') settings["out"] = env;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw IoError("cannot open config file '" + flags.config_path + "'");
    for (const auto& [k, v] : parse_config_text(in)) settings[k] = v;
  }
  for (const auto& [k, v] : flags.explicit_values) settings[k] = v;
  for (const auto& pair : flags.overrides) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + pair + "'");
    set_key(settings, trim(pair.substr(0, eq)), trim(pair.substr(eq + 1)));
  }
  return settings;
}

PlanRequest to_plan_request(const EffectiveConfig& config) {
  PlanRequest request;
  request.problem_ids = config.functions;
  request.algorithm_ids = config.algorithms;
  request.dimension = config.dimension;
  request.runs_per_cell = config.runs;
  request.budget_fe = config.budget_fe;
  request.base_seed = config.seed;
  request.pop_size = config.pop_size;
  request.r1_mode = config.r1_mode;
  request.diff_mode = config.diff_mode;
  return request;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
}

int cmd_list(std::ostream& out) {
  const ProblemRegistry registry;
  out << "functions:";
  for (const auto& name : registry.names()) {
    const Problem p = registry.make(name);
    out << "\n  " << name << "  [" << p.bounds.lower().front() << ", " << p.bounds.upper().front() << "]^"
        << p.dimension() << (p.stochastic ? "  (noisy)" : "");
  }
  out << "\nalgorithms:";
  for (const auto a : {Algorithm::sccsa, Algorithm::csa, Algorithm::sca, Algorithm::random_search}) {
    out << "\n  " << to_string(a);
  }
  out << '\n';
  return kExitOk;
}

int cmd_run(const Flags& flags, std::ostream& out) {
  const EffectiveConfig config = resolve_settings(merge_settings({{"algo", "sccsa"}}, flags));
  if (config.functions.size() != 1) throw ConfigError("run: --fn must name exactly one function");
  if (config.algorithms.size() != 1) throw ConfigError("run: --algo must name exactly one algorithm");
  PlanRequest request = to_plan_request(config);
  request.runs_per_cell = 1;
  const ExperimentPlan plan = resolve_plan(request);

  out << config.banner() << '\n';
  const auto records = run_experiment(plan, 1);
  const RunRecord& r = records.front();

  const fs::path dir(config.out_dir);
  make_dirs(dir);
  const auto written = export_convergence(records, dir / "convergence");

  out << "final_best_fitness = " << format_full(r.final_best_fitness) << '\n'
      << "fe_count = " << r.fe_count << '\n'
      << "iterations = " << r.trace.size() - 1 << '\n'
      << "seed = " << r.seed << '\n'
      << "best_position =";
  for (const double v : r.final_best_position) out << ' ' << format_full(v);
  out << "\ntrace = " << written.front().string() << '\n';
  return kExitOk;
}

int cmd_bench(const Flags& flags, std::ostream& out) {
  std::vector<std::string> all_functions;
  for (const auto id : kAllBenchmarks) all_functions.emplace_back(to_string(id));
  const EffectiveConfig config =
      resolve_settings(merge_settings({{"algo", "sccsa,csa,sca,random"}, {"fn", join(all_functions)}}, flags));
  const ExperimentPlan plan = resolve_plan(to_plan_request(config));
  std::vector<ReferenceValue> reference;
  if (!config.reference.empty()) reference = read_reference_table(fs::path(config.reference));

  out << config.banner() << '\n';
  const auto records = run_experiment(plan, config.jobs);
  const auto cells = summarize_cells(records);
  const Report report = comparison_report(cells, reference);

  const fs::path dir(config.out_dir);
  make_dirs(dir);
  write_text(dir / "effective_config.txt", config.banner());
  write_text(dir / "report.md", report.markdown);
  write_text(dir / "summary.csv", report.csv);
  write_finals_csv(records, dir / "finals.csv");
  const auto csvs = export_convergence(records, dir / "convergence");

  make_dirs(dir / "plots");
  for (const auto& problem : plan.problems) {
    std::vector<ConvergenceSeries> series;
    for (const auto& algorithm : plan.algorithms) {
      auto s = read_convergence_csv(dir / "convergence" / (problem.id + "_" + algorithm.id() + ".csv"));
      s.label = algorithm.id();
      series.push_back(std::move(s));
    }
    write_text(dir / "plots" / (problem.id + ".svg"), render_convergence_svg(series, problem.id));
  }

  out << report.markdown << '\n'
      << "wrote " << records.size() << " runs, " << csvs.size() << " convergence files to " << dir.string() << '\n';
  return kExitOk;
}

int cmd_report(const std::string& finals, const std::string& reference, const std::string& out_dir,
               std::ostream& out) {
  const auto records = read_finals_csv(fs::path(finals));
  std::vector<ReferenceValue> ref;
  if (!reference.empty()) ref = read_reference_table(fs::path(reference));
  const Report report = comparison_report(summarize_cells(records), ref);
  if (!out_dir.empty()) {
    make_dirs(out_dir);
    write_text(fs::path(out_dir) / "report.md", report.markdown);
    write_text(fs::path(out_dir) / "summary.csv", report.csv);
  }
  out << report.markdown;
  return kExitOk;
}

int cmd_plot(const std::vector<std::string>& inputs, const std::string& output, const std::string& title,
             std::ostream& out) {
  std::vector<ConvergenceSeries> series;
  for (const auto& input : inputs) series.push_back(read_convergence_csv(fs::path(input)));
  const std::string svg = render_convergence_svg(series, title.empty() ? series.front().label : title);
  const fs::path path(output);
  if (path.has_parent_path()) make_dirs(path.parent_path());
  write_text(path, svg);
  out << "wrote " << path.string() << '\n';
  return kExitOk;
}

}  // namespace

Settings parse_config_text(std::istream& in) {
  Settings settings;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(row) + ": expected key = value");
    }
    set_key(settings, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return settings;
}

EffectiveConfig resolve_settings(const Settings& settings) {
  for (const auto& [k, v] : settings) {
    if (!kKeys.contains(k)) throw ConfigError("unknown setting '" + k + "'");
  }
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = settings.find(key);
    if (it == settings.end()) return std::nullopt;
    return it->second;
  };

  EffectiveConfig c;
  if (auto v = get("algo")) c.algorithms = split_list(*v);
  if (auto v = get("fn")) c.functions = split_list(*v);
  for (const auto& a : c.algorithms) {
    if (!parse_algorithm(a)) throw ConfigError("unknown algorithm id '" + a + "'");
  }
  const ProblemRegistry registry;
  for (const auto& f : c.functions) {
    if (!registry.contains(f)) throw ConfigError("unknown function id '" + f + "'");
  }
  if (auto v = get("dim")) c.dimension = parse_unsigned("dim", *v);
  if (auto v = get("pop")) c.pop_size = parse_unsigned("pop", *v);
  if (auto v = get("budget")) c.budget_fe = parse_unsigned("budget", *v);
  if (auto v = get("runs")) c.runs = parse_unsigned("runs", *v);
  if (auto v = get("seed")) c.seed = parse_unsigned("seed", *v);
  c.jobs = default_jobs();
  if (auto v = get("jobs")) c.jobs = parse_unsigned("jobs", *v);
  if (auto v = get("r1_mode")) {
    if (*v == "sca") c.r1_mode = R1Mode::sca_original;
    else if (*v == "paper") c.r1_mode = R1Mode::paper_literal;
    else throw ConfigError("r1_mode: expected 'paper' or 'sca', got '" + *v + "'");
  }
  if (auto v = get("csa_diff")) {
    if (*v == "abs") c.diff_mode = DiffMode::paper_abs;
    else if (*v == "signed") c.diff_mode = DiffMode::signed_diff;
    else throw ConfigError("csa_diff: expected 'abs' or 'signed', got '" + *v + "'");
  }
  c.out_dir = get("out").value_or(kDefaultOutDir);
  c.reference = get("reference").value_or("");

  if (c.dimension < 1) throw ConfigError("dim must be at least 1");
  if (c.pop_size < 2) throw ConfigError("pop must be at least 2");
  if (c.budget_fe < c.pop_size) throw ConfigError("budget must be at least pop");
  if (c.runs < 1) throw ConfigError("runs must be at least 1");
  if (c.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (c.out_dir.empty()) throw ConfigError("out must not be empty");
  return c;
}

std::string EffectiveConfig::banner() const {
  Settings s;
  s["algo"] = join(algorithms);
  s["fn"] = join(functions);
  s["dim"] = std::to_string(dimension);
  s["pop"] = std::to_string(pop_size);
  s["budget"] = std::to_string(budget_fe);
  s["runs"] = std::to_string(runs);
  s["seed"] = std::to_string(seed);
  s["jobs"] = std::to_string(jobs);
  s["r1_mode"] = std::string(to_string(r1_mode));
  s["csa_diff"] = std::string(to_string(diff_mode));
  s["out"] = out_dir;
  if (!reference.empty()) s["reference"] = reference;
  std::string text;
  for (const auto& [k, v] : s) text += k + " = " + v + '\n';
  return text;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sine cosine crow search optimizer and benchmark harness", "sccsa"};
  app.require_subcommand(1);

  Flags run_flags;
  auto* run_cmd = app.add_subcommand("run", "Single run of one algorithm on one function");
  add_experiment_flags(*run_cmd, run_flags);

  Flags bench_flags;
  auto* bench_cmd = app.add_subcommand("bench", "Batch experiment over functions x algorithms x runs");
  add_experiment_flags(*bench_cmd, bench_flags);

  std::string finals;
  std::string reference;
  std::string report_out;
  auto* report_cmd = app.add_subcommand("report", "Statistics table from a finals.csv");
  report_cmd->add_option("--in", finals, "finals.csv written by bench")->required();
  report_cmd->add_option("--reference", reference, "CSV of published values (function,algorithm,stat,value)");
  report_cmd->add_option("--out", report_out, "Directory for report.md and summary.csv");

  std::vector<std::string> plot_inputs;
  std::string plot_out;
  std::string plot_title;
  auto* plot_cmd = app.add_subcommand("plot", "SVG convergence plot from convergence CSVs");
  plot_cmd->add_option("csv", plot_inputs, "Convergence CSV files, one series each")->required();
  plot_cmd->add_option("--out", plot_out, "Output SVG path")->required();
  plot_cmd->add_option("--title", plot_title, "Chart title");

  auto* list_cmd = app.add_subcommand("list", "List functions and algorithms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_flags, out);
    if (bench_cmd->parsed()) return cmd_bench(bench_flags, out);
    if (report_cmd->parsed()) return cmd_report(finals, reference, report_out, out);
    if (plot_cmd->parsed()) return cmd_plot(plot_inputs, plot_out, plot_title, out);
    if (list_cmd->parsed()) return cmd_list(out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace sccsa::cli
