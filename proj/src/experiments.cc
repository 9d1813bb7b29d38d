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
#include "softprs/experiments.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <set>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "softprs/analysis.h"
#include "softprs/errors.h"
#include "softprs/graph.h"
#include "softprs/hybrid.h"
#include "softprs/prs.h"
#include "softprs/random_stream.h"
#include "softprs/soft_state.h"
#include "softprs/verify.h"

#ifndef SOFTPRS_VERSION
#define SOFTPRS_VERSION "dev"
#endif

namespace softprs {
namespace {

using Json = nlohmann::json;

constexpr double kDefaultBase = 0.9;
// Fine schedules such as 0.99^l need a few hundred levels before gamma is
// small enough for properness.
constexpr int kEffectiveLevelBudget = 5000;

constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::kComponentStructure, "ComponentStructure"},
    {ExperimentKind::kEffectiveLevels, "EffectiveLevels"},
    {ExperimentKind::kSmallGraphs, "SmallGraphs"},
    {ExperimentKind::kScaling, "Scaling"},
    {ExperimentKind::kHybridComparison, "HybridComparison"},
    {ExperimentKind::kCftpComparison, "CftpComparison"},
    {ExperimentKind::kLevelGrowth, "LevelGrowth"},
};

std::string format_number(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, end);
}

// Runs fn(0..count-1) on up to `threads` workers. The first failure in index
// order is rethrown after all workers join.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(threads, 1));
  if (workers == 1 || count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
      pool.emplace_back(worker);
    }
  }
  for (auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

struct Fixture {
  std::string family;
  std::int32_t k;
  Graph graph;
};

std::vector<Fixture> build_fixtures(const ExperimentSpec& spec) {
  std::vector<Fixture> fixtures;
  const std::uint64_t graph_seed = derive_graph_seed(spec.seed);
  for (const auto& c : spec.cases) {
    if (c.family.starts_with("file:")) {
      const std::string path = c.family.substr(5);
      std::ifstream in(path);
      if (!in) throw ParameterError("cannot open edge list '" + path + "'");
      fixtures.push_back({c.family, c.k, load_edge_list(in)});
    } else {
      fixtures.push_back({c.family, c.k, generate(parse_family(c.family, graph_seed))});
    }
  }
  return fixtures;
}

std::uint64_t trial_seed(const ExperimentSpec& spec, std::size_t row, int trial) {
  return RandomStream(spec.seed)
      .child(StreamLabel::kRun, row)
      .child(StreamLabel::kTrial, static_cast<std::uint64_t>(trial))
      .key();
}

// Fills report.trials for rows x trials cells in parallel, in row-major
// order regardless of scheduling.
void run_cells(const ExperimentSpec& spec, std::size_t rows,
               ExperimentReport& report,
               const std::function<std::map<std::string, double>(
                   std::size_t row, std::uint64_t seed)>& measure) {
  const auto trials = static_cast<std::size_t>(spec.trials);
  report.trials.assign(rows * trials, {});
  parallel_for(rows * trials, spec.threads, [&](std::size_t cell) {
    TrialRecord& record = report.trials[cell];
    record.row = cell / trials;
    record.trial = static_cast<int>(cell % trials);
    record.seed = trial_seed(spec, record.row, record.trial);
    record.values = measure(record.row, record.seed);
  });
}

std::vector<double> column_values(const ExperimentReport& report,
                                  std::size_t row, const std::string& key) {
  std::vector<double> values;
  for (const auto& record : report.trials) {
    if (record.row == row) values.push_back(record.values.at(key));
  }
  return values;
}

double mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double standard_error(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  const auto n = static_cast<double>(values.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

double maximum(const std::vector<double>& values) {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

ExperimentReport start_report(const ExperimentSpec& spec) {
  ExperimentReport report;
  report.spec = spec;
  report.build = "softprs " SOFTPRS_VERSION;
  return report;
}

void require_kind(const ExperimentSpec& spec,
                  std::initializer_list<ExperimentKind> allowed) {
  validate(spec);
  if (std::find(allowed.begin(), allowed.end(), spec.kind) == allowed.end()) {
    throw ParameterError("experiment kind " + std::string(kind_name(spec.kind)) +
                         " does not match this runner");
  }
}

double first_base(const ExperimentSpec& spec) {
  return spec.bases.empty() ? kDefaultBase : spec.bases.front();
}

std::vector<ReportCell> graph_cells(const Fixture& f) {
  return {f.family, static_cast<std::int64_t>(f.graph.vertex_count()),
          static_cast<std::int64_t>(f.graph.max_degree()),
          static_cast<std::int64_t>(f.k)};
}

void require_proper(const Graph& graph, const std::vector<Color>& coloring,
                    const std::string& what) {
  SoftState state;
  state.colors = coloring;
  if (coloring.size() != graph.vertex_count() || !is_proper(state, graph)) {
    throw std::logic_error(what + " returned an improper coloring");
  }
}

PrsOptions checked_prs(int max_levels = kDefaultMaxLevels) {
  PrsOptions options;
  options.max_levels = max_levels;
  options.check_invariants = true;
  return options;
}

HybridConfig checked_hybrid(SolverKind solver, double base) {
  HybridConfig config;
  config.solver = solver;
  config.schedule = GammaSchedule(base);
  config.check_invariants = true;
  return config;
}

}  // namespace

std::string_view kind_name(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  throw std::logic_error("unknown experiment kind");
}

ExperimentKind parse_kind(std::string_view name) {
  for (const auto& [kind, text] : kKindNames) {
    if (text == name) return kind;
  }
  throw ParameterError("unknown experiment '" + std::string(name) + "'");
}

void validate(const ExperimentSpec& spec) {
  if (spec.cases.empty()) throw ParameterError("experiment needs at least one case");
  if (spec.trials < 1) throw ParameterError("trials must be at least 1");
  if (spec.threads < 1) throw ParameterError("threads must be at least 1");
  for (const auto& c : spec.cases) {
    if (c.k < 1) throw ParameterError("case '" + c.family + "' needs k >= 1");
  }
  for (double g : spec.gammas) {
    if (!(g > 0.0 && g <= 1.0)) {
      throw ParameterError("gamma " + format_number(g) + " outside (0, 1]");
    }
  }
  for (double b : spec.bases) {
    if (!(b > 0.0 && b < 1.0)) {
      throw ParameterError("schedule base " + format_number(b) + " outside (0, 1)");
    }
  }
  if (spec.kind == ExperimentKind::kComponentStructure && spec.gammas.empty()) {
    throw ParameterError("ComponentStructure needs a gamma grid");
  }
  if (spec.kind == ExperimentKind::kEffectiveLevels && spec.bases.empty()) {
    throw ParameterError("EffectiveLevels needs schedule bases");
  }
}

ExperimentSpec parse_experiment_spec(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("experiment spec: ") + e.what(),
                      std::max<std::size_t>(e.byte, 1));
  }
  ExperimentSpec spec;
  try {
    if (!doc.is_object()) throw FormatError("experiment spec must be an object", 1);
    for (const auto& [key, value] : doc.items()) {
      static const std::set<std::string> known = {
          "experiment", "cases", "gammas", "bases", "trials", "seed", "threads"};
      if (!known.contains(key)) {
        throw ParameterError("unknown experiment spec key '" + key + "'");
      }
    }
    spec.kind = parse_kind(doc.at("experiment").get<std::string>());
    for (const auto& c : doc.at("cases")) {
      spec.cases.push_back({c.at("family").get<std::string>(),
                            c.at("k").get<std::int32_t>()});
    }
    spec.gammas = doc.value("gammas", std::vector<double>{});
    spec.bases = doc.value("bases", std::vector<double>{});
    spec.trials = doc.value("trials", spec.trials);
    spec.seed = doc.value("seed", spec.seed);
    spec.threads = doc.value("threads", spec.threads);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("experiment spec: ") + e.what(), 0);
  }
  validate(spec);
  return spec;
}

namespace {

Json spec_json(const ExperimentSpec& spec) {
  Json cases = Json::array();
  for (const auto& c : spec.cases) cases.push_back({{"family", c.family}, {"k", c.k}});
  return {{"experiment", std::string(kind_name(spec.kind))},
          {"cases", std::move(cases)},
          {"gammas", spec.gammas},
          {"bases", spec.bases},
          {"trials", spec.trials},
          {"seed", spec.seed},
          {"threads", spec.threads}};
}

}  // namespace

std::string experiment_spec_to_json(const ExperimentSpec& spec) {
  return spec_json(spec).dump(2) + "\n";
}

std::size_t ExperimentReport::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("no report column '" + std::string(name) + "'");
}

double ExperimentReport::number(std::size_t row, std::string_view column_name) const {
  const ReportCell& cell = rows.at(row).at(column(column_name));
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  throw std::invalid_argument("report column '" + std::string(column_name) +
                              "' is not numeric");
}

double median(std::vector<double> values) {
  if (values.empty()) throw ParameterError("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw ParameterError("percentile of an empty sample");
  if (!(p > 0.0 && p <= 100.0)) throw ParameterError("percentile outside (0, 100]");
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(p / 100.0 * static_cast<double>(values.size())));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

double least_squares_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ParameterError("slope needs at least two paired points");
  }
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw ParameterError("slope needs two distinct x values");
  return sxy / sxx;
}

ExperimentReport run_component_structure(const ExperimentSpec& spec) {
  require_kind(spec, {ExperimentKind::kComponentStructure});
  const std::vector<Fixture> fixtures = build_fixtures(spec);
  ExperimentReport report = start_report(spec);
  report.columns = {"Graph", "n", "k", "gamma", "avg |Bad|", "avg |R|",
                    "avg #comp", "max #comp", "avg max comp", "p95 max comp",
                    "avg sum/max comp", "E|Bad| formula", "|Bad| SE"};

  struct Cell {
    std::size_t fixture;
    double gamma;
  };
  std::vector<Cell> cells;
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    for (double g : spec.gammas) cells.push_back({f, g});
  }

  run_cells(spec, cells.size(), report, [&](std::size_t row, std::uint64_t seed) {
    const Fixture& fx = fixtures[cells[row].fixture];
    RandomStream rng(seed);
    const SoftState state = sample_reference(fx.graph, fx.k, rng);
    const GammaLevel level(fx.graph, cells[row].gamma);
    const std::vector<Vertex> bad = level.bad_set(state);
    const ResamplingSet set = level.build_resampling_set(state, bad);
    if (auto problem = check_resampling_set(set, state, level)) {
      throw std::logic_error("resampling set invariant broken: " + *problem);
    }
    const double largest = static_cast<double>(set.max_component_size());
    return std::map<std::string, double>{
        {"bad", static_cast<double>(bad.size())},
        {"resample_size", static_cast<double>(set.size())},
        {"components", static_cast<double>(set.components.size())},
        {"max_component", largest},
        {"sum_over_max", largest > 0 ? static_cast<double>(set.size()) / largest : 1.0},
    };
  });

  for (std::size_t row = 0; row < cells.size(); ++row) {
    const Fixture& fx = fixtures[cells[row].fixture];
    const double gamma = cells[row].gamma;
    std::vector<std::vector<int>> degrees(fx.graph.vertex_count());
    std::vector<std::span<const int>> neighborhoods;
    for (Vertex v = 0; v < static_cast<Vertex>(fx.graph.vertex_count()); ++v) {
      for (Vertex w : fx.graph.neighbors(v)) degrees[v].push_back(fx.graph.degree(w));
      neighborhoods.emplace_back(degrees[v]);
    }
    const auto bad = column_values(report, row, "bad");
    const auto largest = column_values(report, row, "max_component");
    report.rows.push_back({
        fx.family,
        static_cast<std::int64_t>(fx.graph.vertex_count()),
        static_cast<std::int64_t>(fx.k),
        gamma,
        mean(bad),
        mean(column_values(report, row, "resample_size")),
        mean(column_values(report, row, "components")),
        maximum(column_values(report, row, "components")),
        mean(largest),
        percentile(largest, 95.0),
        mean(column_values(report, row, "sum_over_max")),
        analysis::expected_bad_general(neighborhoods, gamma, fx.k),
        standard_error(bad),
    });
  }

  // Growth exponent of the p95 max component in log n, per gamma, when the
  // grid has several sizes: slope of log p95 against log log n.
  for (double gamma : spec.gammas) {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t row = 0; row < cells.size(); ++row) {
      if (cells[row].gamma != gamma) continue;
      const double n = report.number(row, "n");
      const double p95 = report.number(row, "p95 max comp");
      if (n < 3 || p95 <= 0) continue;
      x.push_back(std::log(std::log(n)));
      y.push_back(std::log(p95));
    }
    if (std::set<double>(x.begin(), x.end()).size() >= 2) {
      report.summary["p95 max comp exponent at gamma=" + format_number(gamma)] =
          least_squares_slope(x, y);
    }
  }
  return report;
}

ExperimentReport run_effective_levels(const ExperimentSpec& spec) {
  require_kind(spec, {ExperimentKind::kEffectiveLevels});
  const std::vector<Fixture> fixtures = build_fixtures(spec);
  ExperimentReport report = start_report(spec);
  report.columns = {"Graph", "n", "Delta", "k"};
  for (double base : spec.bases) {
    const std::string label = format_number(base);
    report.columns.push_back("L_eff (" + label + "^l)");
    report.columns.push_back("skip (" + label + "^l)");
  }

  run_cells(spec, fixtures.size(), report, [&](std::size_t row, std::uint64_t seed) {
    const Fixture& fx = fixtures[row];
    std::map<std::string, double> values;
    for (double base : spec.bases) {
      const SampleResult result = sample_iterative(
          fx.graph, fx.k, GammaSchedule(base), RandomStream(seed), checked_prs(kEffectiveLevelBudget));
      require_proper(fx.graph, result.coloring, "iterative sampler");
      const std::string label = format_number(base);
      values["L_eff@" + label] = static_cast<double>(result.stats.effective_levels);
      values["skip@" + label] = static_cast<double>(result.stats.skipped_levels);
    }
    return values;
  });

  for (std::size_t row = 0; row < fixtures.size(); ++row) {
    std::vector<ReportCell> cells = graph_cells(fixtures[row]);
    for (double base : spec.bases) {
      const std::string label = format_number(base);
      cells.push_back(median(column_values(report, row, "L_eff@" + label)));
      cells.push_back(median(column_values(report, row, "skip@" + label)));
    }
    report.rows.push_back(std::move(cells));
  }
  return report;
}

ExperimentReport run_comparison_suite(const ExperimentSpec& spec) {
  require_kind(spec, {ExperimentKind::kSmallGraphs, ExperimentKind::kScaling,
                      ExperimentKind::kHybridComparison,
                      ExperimentKind::kCftpComparison});
  const std::vector<Fixture> fixtures = build_fixtures(spec);
  const double base = first_base(spec);
  ExperimentReport report = start_report(spec);

  // Raw key per reported column, aggregated by median unless listed in
  // `means`.
  std::vector<std::pair<std::string, std::string>> measured;
  std::set<std::string> means;
  switch (spec.kind) {
    case ExperimentKind::kSmallGraphs:
      measured = {{"Levels", "levels"}, {"Resamp.", "resamples"},
                  {"NRS iter.", "nrs_iterations"},
                  {"NRS iter. mean", "nrs_iterations"}};
      means = {"NRS iter. mean"};
      break;
    case ExperimentKind::kScaling:
      measured = {{"Levels", "levels"}, {"Resamp.", "resamples"},
                  {"Vtx resamp.", "vertex_resamples"}};
      break;
    case ExperimentKind::kHybridComparison:
      measured = {{"PRS Levels", "levels"}, {"PRS Resamp.", "resamples"},
                  {"Hybrid-NRS Levels", "hybrid_levels"},
                  {"Hybrid-NRS Resamp.", "hybrid_resamples"}};
      break;
    default:
      measured = {{"Hybrid-Huber Levels", "hybrid_levels"},
                  {"Hybrid-Huber Resamp.", "hybrid_resamples"},
                  {"CFTP solves mean", "cftp_solves"},
                  {"CFTP fallbacks mean", "cftp_fallbacks"}};
      means = {"CFTP solves mean", "CFTP fallbacks mean"};
      break;
  }
  report.columns = {"Graph", "n", "Delta", "k"};
  if (spec.kind == ExperimentKind::kScaling) report.columns.push_back("k/Delta");
  if (spec.kind == ExperimentKind::kCftpComparison) {
    report.columns.push_back("Delta(Delta+2)");
  }
  for (const auto& [name, key] : measured) report.columns.push_back(name);

  const bool plain = spec.kind != ExperimentKind::kCftpComparison;
  run_cells(spec, fixtures.size(), report, [&](std::size_t row, std::uint64_t seed) {
    const Fixture& fx = fixtures[row];
    const RandomStream rng(seed);
    std::map<std::string, double> values;
    if (plain) {
      const SampleResult result = sample_iterative(
          fx.graph, fx.k, GammaSchedule(base), rng, checked_prs());
      require_proper(fx.graph, result.coloring, "iterative sampler");
      values["levels"] = static_cast<double>(result.stats.levels_visited);
      values["resamples"] = static_cast<double>(result.stats.resample_events);
      values["vertex_resamples"] = static_cast<double>(result.stats.vertex_resamples);
    }
    if (spec.kind == ExperimentKind::kSmallGraphs) {
      RandomStream nrs_rng = rng.child(StreamLabel::kSampler, 1);
      const NaiveRejectionResult nrs = naive_rejection_sample(fx.graph, fx.k, nrs_rng);
      require_proper(fx.graph, nrs.coloring, "naive rejection");
      values["nrs_iterations"] = static_cast<double>(nrs.iterations);
    }
    if (spec.kind == ExperimentKind::kHybridComparison ||
        spec.kind == ExperimentKind::kCftpComparison) {
      const SolverKind solver = spec.kind == ExperimentKind::kHybridComparison
                                    ? SolverKind::kNrs
                                    : SolverKind::kHuberCftp;
      const SampleResult result =
          sample_hybrid(fx.graph, fx.k, checked_hybrid(solver, base), rng);
      require_proper(fx.graph, result.coloring, "hybrid sampler");
      values["hybrid_levels"] = static_cast<double>(result.stats.levels_visited);
      values["hybrid_resamples"] = static_cast<double>(result.stats.resample_events);
      values["cftp_solves"] = static_cast<double>(result.stats.cftp_solves);
      values["cftp_fallbacks"] = static_cast<double>(result.stats.cftp_fallbacks);
    }
    return values;
  });

  for (std::size_t row = 0; row < fixtures.size(); ++row) {
    const Fixture& fx = fixtures[row];
    std::vector<ReportCell> cells = graph_cells(fx);
    const double delta = fx.graph.max_degree();
    if (spec.kind == ExperimentKind::kScaling) {
      cells.push_back(delta > 0 ? fx.k / delta : 0.0);
    }
    if (spec.kind == ExperimentKind::kCftpComparison) {
      cells.push_back(static_cast<std::int64_t>(delta * (delta + 2)));
    }
    for (const auto& [name, key] : measured) {
      const auto values = column_values(report, row, key);
      cells.push_back(means.contains(name) ? mean(values) : median(values));
    }
    report.rows.push_back(std::move(cells));
  }
  return report;
}

ExperimentReport run_level_growth(const ExperimentSpec& spec) {
  require_kind(spec, {ExperimentKind::kLevelGrowth});
  const std::vector<Fixture> fixtures = build_fixtures(spec);
  const double base = first_base(spec);
  ExperimentReport report = start_report(spec);
  report.columns = {"Graph", "n", "Delta", "k", "median L", "max L", "median L_eff"};

  run_cells(spec, fixtures.size(), report, [&](std::size_t row, std::uint64_t seed) {
    const Fixture& fx = fixtures[row];
    const SampleResult result =
        sample_hybrid(fx.graph, fx.k, checked_hybrid(SolverKind::kHuberCftp, base),
                      RandomStream(seed));
    require_proper(fx.graph, result.coloring, "hybrid sampler");
    return std::map<std::string, double>{
        {"levels", static_cast<double>(result.stats.levels_visited)},
        {"effective_levels", static_cast<double>(result.stats.effective_levels)},
    };
  });

  std::vector<double> log_n;
  std::vector<double> median_levels;
  for (std::size_t row = 0; row < fixtures.size(); ++row) {
    std::vector<ReportCell> cells = graph_cells(fixtures[row]);
    const auto levels = column_values(report, row, "levels");
    cells.push_back(median(levels));
    cells.push_back(maximum(levels));
    cells.push_back(median(column_values(report, row, "effective_levels")));
    report.rows.push_back(std::move(cells));
    log_n.push_back(std::log(static_cast<double>(fixtures[row].graph.vertex_count())));
    median_levels.push_back(median(levels));
  }
  if (std::set<double>(log_n.begin(), log_n.end()).size() >= 2) {
    report.summary["median L slope vs log n"] =
        least_squares_slope(log_n, median_levels);
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::kComponentStructure:
      return run_component_structure(spec);
    case ExperimentKind::kEffectiveLevels:
      return run_effective_levels(spec);
    case ExperimentKind::kLevelGrowth:
      return run_level_growth(spec);
    default:
      return run_comparison_suite(spec);
  }
}

std::string report_to_json(const ExperimentReport& report) {
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json out = Json::array();
    for (const auto& cell : row) {
      std::visit([&](const auto& value) { out.push_back(value); }, cell);
    }
    rows.push_back(std::move(out));
  }
  Json trials = Json::array();
  for (const auto& record : report.trials) {
    trials.push_back({{"row", record.row},
                      {"trial", record.trial},
                      {"seed", record.seed},
                      {"values", record.values}});
  }
  const Json doc = {
      {"schema_version", 1},
      {"experiment", std::string(kind_name(report.spec.kind))},
      {"metadata",
       {{"seed", report.spec.seed},
        {"graph_seed", derive_graph_seed(report.spec.seed)},
        {"build", report.build},
        {"timestamp", report.timestamp},
        {"spec", spec_json(report.spec)}}},
      {"columns", report.columns},
      {"rows", std::move(rows)},
      {"trials", std::move(trials)},
      {"summary", report.summary},
  };
  return doc.dump(2) + "\n";
}

std::string report_to_csv(const ExperimentReport& report) {
  auto quote = [](const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += quote(report.columns[i]);
  }
  out += '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      struct Visitor {
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(const std::string& v) const { return v; }
      };
      out += quote(std::visit(Visitor{}, row[i]));
    }
    out += '\n';
  }
  return out;
}

}  // namespace softprs
