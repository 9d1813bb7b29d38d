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

#include "softprs/hybrid.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "softprs/errors.h"

namespace softprs {
namespace {

struct ComponentOutcome {
  std::vector<Color> colors;
  std::vector<double> uniforms;
  std::int64_t nrs_trials = 0;
  std::int64_t cftp_solves = 0;
  std::int64_t cftp_fallbacks = 0;
  std::int64_t nested_resample_events = 0;
  std::int64_t vertex_resamples = 0;
};

void draw_uniforms(ComponentOutcome& out, const ComponentProblem& problem) {
  RandomStream rng = problem.rng.child(StreamLabel::kUniforms, 0);
  out.uniforms.resize(problem.size());
  for (double& u : out.uniforms) u = rng.open_unit();
}

ComponentOutcome solve_component(const ComponentProblem& problem,
                                 const HybridConfig& config) {
  ComponentOutcome out;
  if (config.nesting_depth > 0) {
    HybridConfig inner = config;
    --inner.nesting_depth;
    inner.threads = 1;
    inner.adaptive = false;
    SampleResult nested = sample_hybrid(problem.component.graph, problem.k, inner,
                                        problem.rng.child(StreamLabel::kSolver, 0));
    out.colors = std::move(nested.coloring);
    const RunStats& s = nested.stats;
    out.nrs_trials = s.nrs_trials;
    out.cftp_solves = s.cftp_solves;
    out.cftp_fallbacks = s.cftp_fallbacks;
    out.nested_resample_events = s.resample_events + s.nested_resample_events;
    out.vertex_resamples = s.vertex_resamples;
    draw_uniforms(out, problem);
    return out;
  }
  if (config.solver == SolverKind::kHuberCftp && cftp_applicable(problem)) {
    ComponentProblem chain = problem;
    chain.rng = problem.rng.child(StreamLabel::kSolver, 0);
    try {
      CftpResult solved = solve_cftp_huber(chain, config.cftp);
      out.colors = std::move(solved.colors);
      out.cftp_solves = 1;
      draw_uniforms(out, problem);
      return out;
    } catch (const SolverTimeout&) {
      out.cftp_fallbacks = 1;
    }
  }
  ComponentProblem rejection = problem;
  rejection.rng = problem.rng.child(StreamLabel::kSolver, 1);
  NrsResult solved = solve_nrs(rejection, config.max_nrs_trials);
  out.colors = std::move(solved.colors);
  out.uniforms = std::move(solved.uniforms);
  out.nrs_trials = solved.trials;
  out.vertex_resamples =
      (solved.trials - 1) * static_cast<std::int64_t>(problem.size());
  return out;
}

// Solves every component of `set` and writes the results into `state`.
void solve_sweep(const Graph& graph, SoftState& state, const ResamplingSet& set,
                 double gamma, const HybridConfig& config,
                 const RandomStream& sweep_rng, RunStats& stats) {
  const std::size_t count = set.components.size();
  std::vector<ComponentProblem> problems;
  problems.reserve(count);
  std::vector<std::size_t> sizes;
  sizes.reserve(count);
  for (const auto& component : set.components) {
    problems.push_back(make_component_problem(
        graph, state, component, gamma,
        sweep_rng.child(StreamLabel::kComponent,
                        static_cast<std::uint64_t>(component.front()))));
    sizes.push_back(component.size());
  }

  std::vector<ComponentOutcome> outcomes(count);
  std::vector<std::exception_ptr> errors(count);
  auto work = [&](std::size_t i) {
    try {
      outcomes[i] = solve_component(problems[i], config);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t workers =
      std::min(count, static_cast<std::size_t>(std::max(config.threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
  } else {
    // Largest components first so the tail of the sweep stays short.
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sizes[a] > sizes[b]; });
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t j; (j = next.fetch_add(1)) < count;) work(order[j]);
      });
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  stats.vertex_resamples += static_cast<std::int64_t>(set.size());
  for (std::size_t i = 0; i < count; ++i) {
    const auto& component = set.components[i];
    const ComponentOutcome& out = outcomes[i];
    for (std::size_t j = 0; j < component.size(); ++j) {
      state.colors[component[j]] = out.colors[j];
      state.uniforms[component[j]] = out.uniforms[j];
    }
    stats.nrs_trials += out.nrs_trials;
    stats.cftp_solves += out.cftp_solves;
    stats.cftp_fallbacks += out.cftp_fallbacks;
    stats.nested_resample_events += out.nested_resample_events;
    stats.vertex_resamples += out.vertex_resamples;
  }
}

#ifdef NDEBUG
constexpr bool kDebugChecks = false;
#else
constexpr bool kDebugChecks = true;
#endif

ResamplingSet build_checked(const GammaLevel& level, const SoftState& state,
                            std::span<const Vertex> bad, bool check) {
  ResamplingSet set = level.build_resampling_set(state, bad);
  if (check || kDebugChecks) {
    if (auto problem = check_resampling_set(set, state, level)) {
      throw std::logic_error("resampling set invariant broken: " + *problem);
    }
  }
  return set;
}

void record_sweep(RunStats& stats, int level, std::size_t bad,
                  const ResamplingSet& set) {
  ++stats.resample_events;
  stats.per_sweep.push_back({level, static_cast<std::int64_t>(bad),
                             static_cast<std::int64_t>(set.size()),
                             static_cast<std::int64_t>(set.components.size()),
                             static_cast<std::int64_t>(set.max_component_size())});
}

BudgetExhausted level_budget_error(const Graph& graph, std::int32_t k, int max_levels) {
  return make_budget_error(graph, k, BudgetExhausted::Reason::kLevels,
                           "level budget (" + std::to_string(max_levels) +
                               ") exhausted; raise max_levels");
}

BudgetExhausted sweep_budget_error(const Graph& graph, std::int32_t k,
                                   std::int64_t max_sweeps, int level) {
  return make_budget_error(graph, k, BudgetExhausted::Reason::kSweeps,
                           "inner sweep budget (" + std::to_string(max_sweeps) +
                               ") exhausted at level " + std::to_string(level));
}

}  // namespace

void validate(const HybridConfig& config) {
  if (config.threads < 1) throw ParameterError("threads must be at least 1");
  if (config.nesting_depth < 0) throw ParameterError("nesting depth must be non-negative");
  if (config.max_levels < 1) throw ParameterError("max_levels must be at least 1");
  if (config.max_inner_sweeps < 1) throw ParameterError("max_inner_sweeps must be at least 1");
  if (config.max_nrs_trials < 1) throw ParameterError("max_nrs_trials must be at least 1");
  if (config.cftp.max_epochs < 0 || config.cftp.max_epochs > 40) {
    throw ParameterError("cftp max_epochs must lie in [0, 40]");
  }
}

SampleResult sample_hybrid(const Graph& graph, std::int32_t k,
                           const HybridConfig& config, const RandomStream& rng) {
  validate(config);
  if (config.adaptive) return run_adaptive_gamma(graph, k, config, rng);
  require_colorable(graph, k);
  RandomStream init = rng.child(StreamLabel::kReference, 0);
  SoftState state = sample_reference(graph, k, init);
  SampleResult result;
  RunStats& stats = result.stats;
  for (int level = 0; !is_proper(state, graph); ++level) {
    if (level >= config.max_levels) throw level_budget_error(graph, k, config.max_levels);
    ++stats.levels_visited;
    const double gamma = config.schedule.gamma(level);
    const GammaLevel gamma_level(graph, gamma);
    const RandomStream level_rng = rng.child(StreamLabel::kLevel, level);
    std::int64_t sweep = 0;
    for (;; ++sweep) {
      const std::vector<Vertex> bad = gamma_level.bad_set(state);
      if (bad.empty()) break;
      if (sweep >= config.max_inner_sweeps) {
        throw sweep_budget_error(graph, k, config.max_inner_sweeps, level);
      }
      const ResamplingSet set = build_checked(gamma_level, state, bad, config.check_invariants);
      record_sweep(stats, level, bad.size(), set);
      solve_sweep(graph, state, set, gamma, config,
                  level_rng.child(StreamLabel::kSweep, static_cast<std::uint64_t>(sweep)),
                  stats);
    }
    if (sweep > 0) {
      ++stats.effective_levels;
    } else {
      ++stats.skipped_levels;
    }
  }
  result.coloring = std::move(state.colors);
  return result;
}

DispatchPlan plan_parallel_dispatch(std::span<const std::size_t> sizes,
                                    int workers) {
  if (workers < 1) throw ParameterError("worker count must be at least 1");
  DispatchPlan plan;
  plan.assignment.resize(static_cast<std::size_t>(workers));
  plan.loads.assign(static_cast<std::size_t>(workers), 0);
  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sizes[a] > sizes[b]; });
  std::size_t total = 0;
  for (std::size_t i : order) {
    const auto lightest = static_cast<std::size_t>(
        std::min_element(plan.loads.begin(), plan.loads.end()) - plan.loads.begin());
    plan.assignment[lightest].push_back(i);
    plan.loads[lightest] += sizes[i];
    total += sizes[i];
  }
  const std::size_t heaviest = *std::max_element(plan.loads.begin(), plan.loads.end());
  plan.speedup = heaviest == 0 ? 1.0
                               : static_cast<double>(total) / static_cast<double>(heaviest);
  return plan;
}

SampleResult run_adaptive_gamma(const Graph& graph, std::int32_t k, int workers,
                                const RandomStream& rng) {
  HybridConfig config;
  config.threads = workers;
  return run_adaptive_gamma(graph, k, config, rng);
}

SampleResult run_adaptive_gamma(const Graph& graph, std::int32_t k,
                                const HybridConfig& config,
                                const RandomStream& rng) {
  validate(config);
  require_colorable(graph, k);
  const auto limit = static_cast<std::size_t>(config.threads);
  RandomStream init = rng.child(StreamLabel::kReference, 0);
  SoftState state = sample_reference(graph, k, init);
  SampleResult result;
  RunStats& stats = result.stats;
  for (int level = 0; !is_proper(state, graph); ++level) {
    if (level >= config.max_levels) throw level_budget_error(graph, k, config.max_levels);
    ++stats.levels_visited;
    const double gamma = config.schedule.gamma(level);
    const GammaLevel gamma_level(graph, gamma);
    const RandomStream level_rng = rng.child(StreamLabel::kLevel, level);
    const bool last_level = level + 1 == config.max_levels;
    std::int64_t sweep = 0;
    for (;; ++sweep) {
      const std::vector<Vertex> bad = gamma_level.bad_set(state);
      if (bad.empty()) break;
      const ResamplingSet set = build_checked(gamma_level, state, bad, config.check_invariants);
      // Too fragmented: try a smaller gamma instead of solving here.
      if (set.components.size() > limit && !last_level) break;
      if (sweep >= config.max_inner_sweeps) {
        throw sweep_budget_error(graph, k, config.max_inner_sweeps, level);
      }
      record_sweep(stats, level, bad.size(), set);
      solve_sweep(graph, state, set, gamma, config,
                  level_rng.child(StreamLabel::kSweep, static_cast<std::uint64_t>(sweep)),
                  stats);
    }
    if (sweep > 0) {
      ++stats.effective_levels;
    } else {
      ++stats.skipped_levels;
    }
  }
  result.coloring = std::move(state.colors);
  return result;
}

}  // namespace softprs
