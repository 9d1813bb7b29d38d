// Copyright 2026 The softprs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// softprs command-line tool: sample, analyze, verify, components, bench.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "softprs/analysis.h"
#include "softprs/coloring_record.h"
#include "softprs/errors.h"
#include "softprs/experiments.h"
#include "softprs/graph.h"
#include "softprs/hybrid.h"
#include "softprs/prs.h"
#include "softprs/verify.h"

namespace softprs {
namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParameter = 2;
constexpr int kExitBudget = 3;
constexpr int kExitCapacity = 4;
constexpr int kExitRejected = 5;

constexpr const char* kUndefinedBelow3 = "undefined for \xce\x94<3";

struct CliConfig {
  std::string command;
  std::string family;
  std::string graph_path;
  std::optional<std::uint64_t> graph_seed;
  std::int32_t k = 0;
  std::string algorithm = "iterative";
  std::string solver = "huber";
  bool solver_given = false;
  double gamma_base = 0.9;
  std::optional<int> depth;
  bool adaptive = false;
  int max_levels = kDefaultMaxLevels;
  bool check_invariants = false;
  int threads = 1;
  bool threads_given = false;
  std::uint64_t seed = 1;
  std::int64_t runs = 30000;
  int trials = 20;
  std::vector<double> gammas;
  int delta = 0;
  std::int64_t n = 1000;
  std::string spec_path;
  std::string format;
  std::string output;
};

std::string format_number(double value) {
  std::ostringstream out;
  out << std::setprecision(6) << value;
  return out.str();
}

std::string fixed(double value, int decimals) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(decimals) << value;
  return out.str();
}

void emit(const CliConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw ParameterError("cannot write '" + cfg.output + "'");
  out << text;
}

std::string utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

struct LoadedGraph {
  Graph graph;
  std::string descriptor;
  std::uint64_t graph_seed = 0;
};

LoadedGraph load_graph(const CliConfig& cfg) {
  if (cfg.family.empty() == cfg.graph_path.empty()) {
    throw ParameterError("give exactly one of --family or --graph");
  }
  LoadedGraph loaded;
  loaded.graph_seed = cfg.graph_seed.value_or(derive_graph_seed(cfg.seed));
  if (!cfg.graph_path.empty()) {
    std::ifstream in(cfg.graph_path);
    if (!in) throw ParameterError("cannot open edge list '" + cfg.graph_path + "'");
    loaded.graph = load_edge_list(in);
    loaded.descriptor = "file:" + cfg.graph_path;
  } else {
    loaded.graph = generate(parse_family(cfg.family, loaded.graph_seed));
    loaded.descriptor = cfg.family;
  }
  return loaded;
}

SolverKind solver_kind(const std::string& name) {
  if (name == "nrs") return SolverKind::kNrs;
  if (name == "huber") return SolverKind::kHuberCftp;
  throw ParameterError("solver '" + name +
                       "' is not available in this build; use nrs or huber");
}

AlgorithmDescriptor describe_algorithm(const CliConfig& cfg) {
  AlgorithmDescriptor a;
  a.name = cfg.algorithm;
  a.gamma_base = cfg.gamma_base;
  a.threads = cfg.threads;
  if (cfg.algorithm == "hybrid") {
    a.solver = cfg.solver;
    a.depth = cfg.depth.value_or(0);
  } else if (cfg.algorithm == "recursive") {
    a.depth = cfg.depth.value_or(kUnlimitedDepth);
  }
  return a;
}

using Sampler = std::function<SampleResult(const RandomStream&)>;

Sampler make_sampler(const CliConfig& cfg, const Graph& graph) {
  if (cfg.k < 1) throw ParameterError("--k must be at least 1");
  if (!(cfg.gamma_base > 0.0 && cfg.gamma_base < 1.0)) {
    throw ParameterError("--gamma-base must lie in (0, 1)");
  }
  if (cfg.depth && *cfg.depth < 0) throw ParameterError("--depth must be >= 0");
  const GammaSchedule schedule(cfg.gamma_base);
  if (cfg.algorithm == "hybrid") {
    HybridConfig config;
    config.solver = solver_kind(cfg.solver);
    config.threads = cfg.threads;
    config.nesting_depth = cfg.depth.value_or(0);
    config.adaptive = cfg.adaptive;
    config.schedule = schedule;
    config.max_levels = cfg.max_levels;
    config.check_invariants = cfg.check_invariants;
    validate(config);
    return [&graph, k = cfg.k, config](const RandomStream& rng) {
      return sample_hybrid(graph, k, config, rng);
    };
  }
  if (cfg.solver_given) {
    throw ParameterError("--solver applies only to --algo hybrid");
  }
  if (cfg.adaptive) throw ParameterError("--adaptive applies only to --algo hybrid");
  PrsOptions options;
  options.max_levels = cfg.max_levels;
  options.check_invariants = cfg.check_invariants;
  options.recursion_depth = cfg.depth.value_or(kUnlimitedDepth);
  if (cfg.algorithm == "recursive") {
    return [&graph, k = cfg.k, schedule, options](const RandomStream& rng) {
      return sample_recursive(graph, k, schedule, rng, options);
    };
  }
  if (cfg.depth) throw ParameterError("--depth applies to recursive and hybrid");
  return [&graph, k = cfg.k, schedule, options](const RandomStream& rng) {
    return sample_iterative(graph, k, schedule, rng, options);
  };
}

// Effective configuration as key=value pairs, echoed with every run.
std::string config_line(const CliConfig& cfg, const LoadedGraph* graph) {
  std::ostringstream out;
  out << "# softprs " << cfg.command;
  if (graph != nullptr) {
    out << " graph=" << graph->descriptor << " graph_seed=" << graph->graph_seed
        << " n=" << graph->graph.vertex_count();
  }
  if (cfg.command == "analyze") {
    out << " delta=" << cfg.delta;
    if (cfg.k > 0) out << " k=" << cfg.k << " n=" << cfg.n;
    out << " gamma_base=" << format_number(cfg.gamma_base);
    return out.str() + "\n";
  }
  out << " k=" << cfg.k;
  if (cfg.command == "sample" || cfg.command == "verify") {
    const AlgorithmDescriptor a = describe_algorithm(cfg);
    out << " algo=" << a.name << " solver=" << a.solver
        << " gamma_base=" << format_number(a.gamma_base) << " depth=" << a.depth;
    if (cfg.adaptive) out << " adaptive=1";
    out << " max_levels=" << cfg.max_levels;
  }
  if (cfg.command == "verify") out << " runs=" << cfg.runs;
  out << " threads=" << cfg.threads << " seed=" << cfg.seed << "\n";
  return out.str();
}

int cmd_sample(const CliConfig& cfg) {
  const LoadedGraph loaded = load_graph(cfg);
  const Sampler sampler = make_sampler(cfg, loaded.graph);
  const SampleResult result = sampler(RandomStream(cfg.seed));

  ColoringRecord record;
  record.n = static_cast<std::int64_t>(loaded.graph.vertex_count());
  record.k = cfg.k;
  record.colors = result.coloring;
  record.graph = loaded.descriptor;
  record.graph_seed = loaded.graph_seed;
  record.seed = cfg.seed;
  record.algorithm = describe_algorithm(cfg);
  record.stats = RecordStats::from(result.stats);

  const std::string config = config_line(cfg, &loaded);
  if (cfg.format == "json") {
    emit(cfg, serialize(record));
  } else if (cfg.format == "csv") {
    std::cerr << config;
    std::string out = "vertex,color\n";
    for (std::size_t v = 0; v < record.colors.size(); ++v) {
      out += std::to_string(v) + "," + std::to_string(record.colors[v]) + "\n";
    }
    emit(cfg, out);
  } else {
    std::ostringstream out;
    out << config << "colors:";
    for (Color c : record.colors) out << ' ' << c;
    out << "\nlevels_visited: " << result.stats.levels_visited
        << "\neffective_levels: " << result.stats.effective_levels
        << "\nskipped_levels: " << result.stats.skipped_levels
        << "\nresample_events: " << result.stats.resample_events
        << "\nvertex_resamples: " << result.stats.vertex_resamples
        << "\nnested_resample_events: " << result.stats.nested_resample_events
        << "\nnrs_trials: " << result.stats.nrs_trials
        << "\ncftp_solves: " << result.stats.cftp_solves
        << "\ncftp_fallbacks: " << result.stats.cftp_fallbacks << "\n";
    emit(cfg, out.str());
  }
  return kExitOk;
}

int cmd_analyze(const CliConfig& cfg) {
  if (cfg.delta < 0) throw ParameterError("--delta must be non-negative");
  if (!(cfg.gamma_base > 0.0 && cfg.gamma_base < 1.0)) {
    throw ParameterError("--gamma-base must lie in (0, 1)");
  }
  std::vector<double> gammas = cfg.gammas;
  if (gammas.empty()) gammas = {0.99, 0.96, 0.95, 0.93, 0.91, 0.9, 0.89, 0.85, 0.8};
  for (double g : gammas) {
    if (!(g > 0.0 && g <= 1.0)) throw ParameterError("gammas must lie in (0, 1]");
  }
  const bool percolation = cfg.delta >= 3;
  const bool have_k = cfg.k > 0;

  Json constants = Json::object();
  if (percolation) {
    constants["gamma_critical"] = analysis::gamma_critical(cfg.delta);
    constants["k_sufficient"] = analysis::k_sufficient(cfg.delta);
    constants["effective_levels"] =
        analysis::effective_level_count(cfg.gamma_base, cfg.delta);
  } else {
    constants["gamma_critical"] = kUndefinedBelow3;
    constants["k_sufficient"] = kUndefinedBelow3;
    constants["effective_levels"] = kUndefinedBelow3;
  }

  Json rows = Json::array();
  for (double g : gammas) {
    Json row = {{"gamma", g}};
    if (have_k) {
      row["p_bad"] = analysis::p_bad_regular(g, cfg.delta, cfg.k);
      row["expected_bad"] = analysis::expected_bad_regular(cfg.n, g, cfg.delta, cfg.k);
    }
    row["non_passive"] = analysis::non_passive_fraction(g, cfg.delta);
    if (!percolation) {
      row["decay_rate"] = kUndefinedBelow3;
      row["cluster_size"] = kUndefinedBelow3;
      row["k_hybrid"] = kUndefinedBelow3;
    } else if (g <= analysis::gamma_critical(cfg.delta) ||
               analysis::non_passive_fraction(g, cfg.delta) * (cfg.delta - 1) >= 1.0) {
      row["decay_rate"] = "supercritical";
      row["cluster_size"] = "supercritical";
      row["k_hybrid"] = "supercritical";
    } else {
      row["decay_rate"] = analysis::percolation_decay_rate(g, cfg.delta);
      row["cluster_size"] = analysis::expected_cluster_size(g, cfg.delta);
      row["k_hybrid"] = analysis::k_hybrid_bound(g, cfg.delta);
    }
    rows.push_back(std::move(row));
  }

  const std::vector<std::string> columns = [&] {
    std::vector<std::string> c = {"gamma"};
    if (have_k) c.insert(c.end(), {"p_bad", "expected_bad"});
    c.push_back("non_passive");
    c.insert(c.end(), {"decay_rate", "cluster_size", "k_hybrid"});
    return c;
  }();
  // Text tables leave out the percolation columns when they are undefined.
  const std::size_t text_columns = percolation ? columns.size() : columns.size() - 3;
  auto cell = [](const Json& value, int decimals) {
    return value.is_string() ? value.get<std::string>()
                             : fixed(value.get<double>(), decimals);
  };

  if (cfg.format == "json") {
    Json config = {{"delta", cfg.delta}, {"gamma_base", cfg.gamma_base}, {"gammas", gammas}};
    if (have_k) {
      config["k"] = cfg.k;
      config["n"] = cfg.n;
    }
    const Json doc = {{"config", config}, {"constants", constants}, {"rows", rows}};
    emit(cfg, doc.dump(2) + "\n");
    return kExitOk;
  }
  if (cfg.format == "csv") {
    std::cerr << config_line(cfg, nullptr);
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < columns.size(); ++i) {
        const Json& v = row[columns[i]];
        out += (i ? "," : "");
        out += v.is_string() ? "" : format_number(v.get<double>());
      }
      out += "\n";
    }
    emit(cfg, out);
    return kExitOk;
  }
  std::ostringstream out;
  out << config_line(cfg, nullptr);
  if (percolation) {
    out << "gamma_critical    " << fixed(constants["gamma_critical"].get<double>(), 3) << "\n"
        << "k_sufficient      " << fixed(constants["k_sufficient"].get<double>(), 1) << "\n"
        << "effective_levels  " << constants["effective_levels"].get<int>() << "\n";
  } else {
    out << "gamma_critical    " << kUndefinedBelow3 << "\n"
        << "k_sufficient      " << kUndefinedBelow3 << "\n"
        << "effective_levels  " << kUndefinedBelow3 << "\n";
  }
  if (!have_k) out << "(pass --k for p_bad and expected_bad columns)\n";
  if (!percolation) out << "decay_rate, cluster_size, k_hybrid: " << kUndefinedBelow3 << "\n";
  for (std::size_t i = 0; i < text_columns; ++i) out << std::setw(14) << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < text_columns; ++i) {
      out << std::setw(14) << cell(row[columns[i]], i == 0 ? 3 : 4);
    }
    out << "\n";
  }
  emit(cfg, out.str());
  return kExitOk;
}

int cmd_verify(const CliConfig& cfg) {
  const LoadedGraph loaded = load_graph(cfg);
  const Sampler sampler = make_sampler(cfg, loaded.graph);
  const ColoringSampler coloring = [&](const RandomStream& rng) {
    return sampler(rng).coloring;
  };
  const ChiSquareReport report =
      uniformity_test(coloring, loaded.graph, cfg.k, cfg.runs, RandomStream(cfg.seed));
  const std::string verdict = report.rejected_at_1pct ? "rejected" : "not rejected";
  if (cfg.format == "json") {
    const AlgorithmDescriptor a = describe_algorithm(cfg);
    const Json doc = {
        {"config",
         {{"graph", loaded.descriptor},
          {"graph_seed", loaded.graph_seed},
          {"k", cfg.k},
          {"algorithm", a.name},
          {"solver", a.solver},
          {"gamma_base", a.gamma_base},
          {"depth", a.depth},
          {"runs", cfg.runs},
          {"threads", cfg.threads},
          {"seed", cfg.seed}}},
        {"chi_square",
         {{"statistic", report.statistic},
          {"degrees_of_freedom", report.degrees_of_freedom},
          {"p_value", report.p_value},
          {"sample_size", report.sample_size}}},
        {"rejected_at_1pct", report.rejected_at_1pct},
    };
    emit(cfg, doc.dump(2) + "\n");
  } else {
    if (cfg.format == "csv") {
      std::cerr << config_line(cfg, &loaded);
      emit(cfg, "statistic,degrees_of_freedom,p_value,sample_size,verdict\n" +
                    format_number(report.statistic) + "," +
                    std::to_string(report.degrees_of_freedom) + "," +
                    format_number(report.p_value) + "," +
                    std::to_string(report.sample_size) + "," + verdict + "\n");
    } else {
      std::ostringstream out;
      out << config_line(cfg, &loaded) << "outcomes: " << report.degrees_of_freedom + 1
          << "\nchi_square: " << format_number(report.statistic)
          << "\ndegrees_of_freedom: " << report.degrees_of_freedom
          << "\np_value: " << format_number(report.p_value)
          << "\nverdict: " << verdict << " at the 1% level\n";
      emit(cfg, out.str());
    }
  }
  return report.rejected_at_1pct ? kExitRejected : kExitOk;
}

std::string report_to_text(const ExperimentReport& report) {
  std::vector<std::vector<std::string>> table = {report.columns};
  for (const auto& row : report.rows) {
    std::vector<std::string> line;
    for (const auto& cell : row) {
      struct Visitor {
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(const std::string& v) const { return v; }
      };
      line.push_back(std::visit(Visitor{}, cell));
    }
    table.push_back(std::move(line));
  }
  std::vector<std::size_t> width(report.columns.size(), 0);
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::ostringstream out;
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i > 0) out << "  ";
      out << std::setw(static_cast<int>(width[i])) << line[i];
    }
    out << "\n";
  }
  for (const auto& [name, value] : report.summary) {
    out << name << ": " << format_number(value) << "\n";
  }
  return out.str();
}

void emit_report(const CliConfig& cfg, ExperimentReport report) {
  report.timestamp = utc_now();
  if (cfg.format == "json") {
    emit(cfg, report_to_json(report));
    return;
  }
  const std::string echo = "# softprs " + cfg.command + " " +
                           nlohmann::json::parse(experiment_spec_to_json(report.spec)).dump() +
                           "\n";
  if (cfg.format == "csv") {
    std::cerr << echo;
    emit(cfg, report_to_csv(report));
  } else {
    emit(cfg, echo + report_to_text(report));
  }
}

int cmd_components(const CliConfig& cfg) {
  if (cfg.family.empty() == cfg.graph_path.empty()) {
    throw ParameterError("give exactly one of --family or --graph");
  }
  ExperimentSpec spec;
  spec.kind = ExperimentKind::kComponentStructure;
  spec.cases = {{cfg.graph_path.empty() ? cfg.family : "file:" + cfg.graph_path, cfg.k}};
  spec.gammas = cfg.gammas;
  spec.trials = cfg.trials;
  spec.seed = cfg.seed;
  spec.threads = cfg.threads;
  emit_report(cfg, run_component_structure(spec));
  return kExitOk;
}

int cmd_bench(const CliConfig& cfg) {
  std::ifstream in(cfg.spec_path, std::ios::binary);
  if (!in) throw ParameterError("cannot open spec '" + cfg.spec_path + "'");
  std::stringstream text;
  text << in.rdbuf();
  ExperimentSpec spec = parse_experiment_spec(text.str());
  if (cfg.threads_given) spec.threads = cfg.threads;
  emit_report(cfg, run_experiment(spec));
  return kExitOk;
}

int default_threads() {
  const char* env = std::getenv("SOFTPRS_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    std::size_t used = 0;
    const int value = std::stoi(env, &used);
    if (used == std::string(env).size() && value >= 1) return value;
  } catch (const std::exception&) {
  }
  throw ParameterError(std::string("SOFTPRS_THREADS must be a positive integer, got '") +
                       env + "'");
}

int run(int argc, char** argv) {
  CliConfig cfg;
  CLI::App app{"Exact uniform proper colorings by gamma-soft partial rejection sampling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "softprs " SOFTPRS_VERSION);

  auto add_graph = [&](CLI::App* sub) {
    auto* family = sub->add_option("--family", cfg.family,
                                   "cycle:N, grid:M, complete:N, petersen or "
                                   "random-regular:N:D");
    auto* graph = sub->add_option("--graph", cfg.graph_path, "edge-list file");
    family->excludes(graph);
    graph->excludes(family);
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    sub->add_option("--threads", cfg.threads,
                    "worker threads (default: SOFTPRS_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--output,-o", cfg.output, "write to a file instead of stdout");
  };
  auto add_sampler = [&](CLI::App* sub) {
    sub->add_option("--algo", cfg.algorithm, "sampler")
        ->check(CLI::IsMember({"iterative", "recursive", "hybrid"}))
        ->capture_default_str();
    sub->add_option("--solver", cfg.solver, "hybrid component solver: nrs or huber")
        ->capture_default_str();
    sub->add_option("--gamma-base", cfg.gamma_base, "geometric schedule base")
        ->capture_default_str();
    sub->add_option("--depth", cfg.depth,
                    "recursion depth (recursive) or nesting depth (hybrid)");
    sub->add_flag("--adaptive", cfg.adaptive, "adaptive gamma schedule (hybrid)");
    sub->add_option("--max-levels", cfg.max_levels, "level budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--graph-seed", cfg.graph_seed,
                    "seed for random-regular generation (default: derived from --seed)");
    sub->add_flag("--check-invariants", cfg.check_invariants,
                  "validate every resampling set");
  };

  CLI::App* sample = app.add_subcommand("sample", "draw one uniform proper coloring");
  add_graph(sample);
  sample->add_option("--k", cfg.k, "number of colors")->required();
  add_sampler(sample);
  add_common(sample);

  CLI::App* analyze = app.add_subcommand("analyze", "closed-form quantities for max degree");
  analyze->add_option("--delta", cfg.delta, "maximum degree")->required();
  analyze->add_option("--k", cfg.k, "number of colors (enables p_bad columns)");
  analyze->add_option("--gamma-base", cfg.gamma_base, "schedule base")->capture_default_str();
  analyze->add_option("--gammas", cfg.gammas, "gamma grid")->delimiter(',');
  analyze->add_option("--n", cfg.n, "vertex count for expected_bad")->capture_default_str();
  analyze->add_option("--output,-o", cfg.output, "write to a file instead of stdout");

  CLI::App* verify = app.add_subcommand("verify", "chi-square uniformity test by enumeration");
  add_graph(verify);
  verify->add_option("--k", cfg.k, "number of colors")->required();
  verify->add_option("--runs", cfg.runs, "sampler runs")->capture_default_str();
  add_sampler(verify);
  add_common(verify);

  CLI::App* components =
      app.add_subcommand("components", "resampling-set structure on fresh samples");
  add_graph(components);
  components->add_option("--k", cfg.k, "number of colors")->required();
  components->add_option("--gamma", cfg.gammas, "gamma value(s)")
      ->required()
      ->delimiter(',');
  components->add_option("--trials", cfg.trials, "fresh samples")->capture_default_str();
  add_common(components);

  CLI::App* bench = app.add_subcommand("bench", "run an experiment spec file");
  bench->add_option("--spec", cfg.spec_path, "experiment spec (JSON)")->required();
  add_common(bench);

  // Each subcommand has its own default format.
  std::string sample_format = "json";
  std::string analyze_format = "text";
  std::string verify_format = "text";
  std::string components_format = "text";
  std::string bench_format = "csv";
  for (auto& [sub, value] : std::vector<std::pair<CLI::App*, std::string*>>{
           {sample, &sample_format},
           {analyze, &analyze_format},
           {verify, &verify_format},
           {components, &components_format},
           {bench, &bench_format}}) {
    sub->add_option("--format", *value, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
  }

  try {
    cfg.threads = default_threads();
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParameter;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  if (auto* opt = chosen->get_option_no_throw("--solver"); opt != nullptr) {
    cfg.solver_given = opt->count() > 0;
  }
  if (auto* opt = chosen->get_option_no_throw("--threads"); opt != nullptr) {
    cfg.threads_given = opt->count() > 0 || std::getenv("SOFTPRS_THREADS") != nullptr;
  }
  if (chosen == sample) cfg.format = sample_format;
  if (chosen == analyze) cfg.format = analyze_format;
  if (chosen == verify) cfg.format = verify_format;
  if (chosen == components) cfg.format = components_format;
  if (chosen == bench) cfg.format = bench_format;

  if (chosen == sample) return cmd_sample(cfg);
  if (chosen == analyze) return cmd_analyze(cfg);
  if (chosen == verify) return cmd_verify(cfg);
  if (chosen == components) return cmd_components(cfg);
  return cmd_bench(cfg);
}

}  // namespace
}  // namespace softprs

int main(int argc, char** argv) {
  using namespace softprs;
  try {
    return run(argc, argv);
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitParameter;
  } catch (const FormatError& e) {
    std::cerr << "format error at " << e.position() << ": " << e.what() << "\n";
    return kExitParameter;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const SolverTimeout& e) {
    std::cerr << "solver timeout: " << e.what() << "\n";
    return kExitBudget;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
