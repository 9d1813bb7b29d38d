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

#include "softprs/prs.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace softprs {
namespace {

#ifdef NDEBUG
constexpr bool kDebugChecks = false;
#else
constexpr bool kDebugChecks = true;
#endif

// Past this nesting the recursion stops descending and resamples plainly,
// which is still an exact sampler for the level.
constexpr int kMaxRecursionNesting = 256;

struct RecursionContext {
  const GammaSchedule& schedule;
  std::int64_t sweep_budget;
  std::int64_t sweeps_used = 0;
  RunStats* stats;
  const Graph& top_graph;
  std::int32_t k;
  bool check_invariants = kDebugChecks;
};

void run_level(const Graph& graph, SoftState& state, int level,
               const RandomStream& rng, int depth, int nesting,
               RecursionContext& ctx) {
  const GammaLevel gamma_level(graph, ctx.schedule.gamma(level));
  for (std::int64_t sweep = 0;; ++sweep) {
    const std::vector<Vertex> bad = gamma_level.bad_set(state);
    if (bad.empty()) return;
    if (++ctx.sweeps_used > ctx.sweep_budget) {
      throw make_budget_error(
          ctx.top_graph, ctx.k, BudgetExhausted::Reason::kSweeps,
          "sweep budget (" + std::to_string(ctx.sweep_budget) +
              ") exhausted at level " + std::to_string(level));
    }
    const ResamplingSet set = gamma_level.build_resampling_set(state, bad);
    if (ctx.check_invariants) {
      if (auto problem = check_resampling_set(set, state, gamma_level)) {
        throw std::logic_error("resampling set invariant broken: " + *problem);
      }
    }
    if (ctx.stats != nullptr) {
      if (nesting == 0) {
        ++ctx.stats->resample_events;
        ctx.stats->per_sweep.push_back(
            {level, static_cast<std::int64_t>(bad.size()),
             static_cast<std::int64_t>(set.size()),
             static_cast<std::int64_t>(set.components.size()),
             static_cast<std::int64_t>(set.max_component_size())});
      } else {
        ++ctx.stats->nested_resample_events;
      }
      ctx.stats->vertex_resamples += static_cast<std::int64_t>(set.size());
    }
    const RandomStream sweep_rng = rng.child(StreamLabel::kSweep, sweep);
    RandomStream draw = sweep_rng.child(StreamLabel::kReference, 0);
    const std::vector<Vertex> members = set.vertices();
    resample_vertices(state, members, draw);
    if (depth == 0 || nesting >= kMaxRecursionNesting) continue;

    for (const auto& component : set.components) {
      const InducedSubgraph sub = induced_subgraph(graph, component);
      SoftState local;
      local.k = state.k;
      for (Vertex v : component) {
        local.colors.push_back(state.colors[v]);
        local.uniforms.push_back(state.uniforms[v]);
      }
      const RandomStream comp_rng =
          sweep_rng.child(StreamLabel::kComponent,
                          static_cast<std::uint64_t>(component.front()));
      for (int j = 0; j <= level; ++j) {
        run_level(sub.graph, local, j, comp_rng.child(StreamLabel::kLevel, j),
                  depth == kUnlimitedDepth ? depth : depth - 1, nesting + 1, ctx);
      }
      for (std::size_t i = 0; i < component.size(); ++i) {
        state.colors[component[i]] = local.colors[i];
        state.uniforms[component[i]] = local.uniforms[i];
      }
    }
  }
}

SampleResult run_sampler(const Graph& graph, std::int32_t k,
                         const GammaSchedule& schedule, const RandomStream& rng,
                         const PrsOptions& options, int depth) {
  require_colorable(graph, k);
  RandomStream init = rng.child(StreamLabel::kReference, 0);
  SoftState state = sample_reference(graph, k, init);
  SampleResult result;
  RunStats& stats = result.stats;
  for (int level = 0; !is_proper(state, graph); ++level) {
    if (level >= options.max_levels) {
      throw make_budget_error(graph, k, BudgetExhausted::Reason::kLevels,
                              "level budget (" +
                                  std::to_string(options.max_levels) +
                                  ") exhausted; raise max_levels");
    }
    ++stats.levels_visited;
    const std::int64_t before = stats.resample_events;
    RecursionContext ctx{schedule, options.max_sweeps_per_level, 0, &stats,
                         graph, k, options.check_invariants || kDebugChecks};
    run_level(graph, state, level, rng.child(StreamLabel::kLevel, level), depth,
              0, ctx);
    if (stats.resample_events > before) {
      ++stats.effective_levels;
    } else {
      ++stats.skipped_levels;
    }
  }
  result.coloring = std::move(state.colors);
  return result;
}

}  // namespace

BudgetExhausted make_budget_error(const Graph& graph, std::int32_t k,
                                  BudgetExhausted::Reason reason,
                                  const std::string& detail) {
  const int bound = chromatic_lower_bound(graph);
  if (k < bound) {
    return BudgetExhausted("k=" + std::to_string(k) +
                               " is below the chromatic number lower bound " +
                               std::to_string(bound) +
                               "; no proper coloring exists",
                           BudgetExhausted::Reason::kInfeasible);
  }
  return BudgetExhausted(detail, reason);
}

void require_colorable(const Graph& graph, std::int32_t k) {
  if (k < 1) throw ParameterError("k must be at least 1");
  if (k < chromatic_lower_bound(graph)) {
    throw make_budget_error(graph, k, BudgetExhausted::Reason::kInfeasible, "");
  }
}

SampleResult sample_iterative(const Graph& graph, std::int32_t k,
                              const GammaSchedule& schedule,
                              const RandomStream& rng, int max_levels) {
  PrsOptions options;
  options.max_levels = max_levels;
  return sample_iterative(graph, k, schedule, rng, options);
}

SampleResult sample_iterative(const Graph& graph, std::int32_t k,
                              const GammaSchedule& schedule,
                              const RandomStream& rng, const PrsOptions& options) {
  return run_sampler(graph, k, schedule, rng, options, 0);
}

SampleResult sample_recursive(const Graph& graph, std::int32_t k,
                              const GammaSchedule& schedule,
                              const RandomStream& rng, int max_levels) {
  PrsOptions options;
  options.max_levels = max_levels;
  return sample_recursive(graph, k, schedule, rng, options);
}

SampleResult sample_recursive(const Graph& graph, std::int32_t k,
                              const GammaSchedule& schedule,
                              const RandomStream& rng, const PrsOptions& options) {
  return run_sampler(graph, k, schedule, rng, options, options.recursion_depth);
}

SoftState gamma_prs_at_level(const Graph& graph, SoftState state, int level,
                             const GammaSchedule& schedule,
                             const RandomStream& rng, int depth,
                             RunStats* stats) {
  if (depth < 0) throw ParameterError("recursion depth must be non-negative");
  RecursionContext ctx{schedule, kDefaultMaxSweepsPerLevel, 0, stats, graph,
                       state.k};
  run_level(graph, state, level, rng, depth, 0, ctx);
  return state;
}

}  // namespace softprs
