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

#ifndef SOFTPRS_PRS_H_
#define SOFTPRS_PRS_H_

#include <cstdint>
#include <limits>
#include <vector>

#include "softprs/errors.h"
#include "softprs/graph.h"
#include "softprs/random_stream.h"
#include "softprs/soft_state.h"

namespace softprs {

inline constexpr int kDefaultMaxLevels = 200;
inline constexpr std::int64_t kDefaultMaxSweepsPerLevel = 100'000;
inline constexpr int kUnlimitedDepth = std::numeric_limits<int>::max();

// One construction of the resampling set.
struct SweepRecord {
  int level = 0;
  std::int64_t bad_count = 0;
  std::int64_t resample_size = 0;
  std::int64_t component_count = 0;
  std::int64_t max_component_size = 0;

  bool operator==(const SweepRecord&) const = default;
};

// Counters for one sampling run. A level is effective iff at least one
// resampling set was built there; every other visited level is skipped.
struct RunStats {
  std::int64_t levels_visited = 0;
  std::int64_t effective_levels = 0;
  std::int64_t skipped_levels = 0;
  // Top-level resampling-set constructions.
  std::int64_t resample_events = 0;
  // Vertices redrawn, summed over all events, recursion and solver trials.
  std::int64_t vertex_resamples = 0;
  // Resampling sets built inside recursion or nested hybrid solvers.
  std::int64_t nested_resample_events = 0;
  std::int64_t nrs_trials = 0;
  std::int64_t cftp_solves = 0;
  std::int64_t cftp_fallbacks = 0;
  std::vector<SweepRecord> per_sweep;

  bool operator==(const RunStats&) const = default;
};

struct SampleResult {
  std::vector<Color> coloring;
  RunStats stats;
};

struct PrsOptions {
  int max_levels = kDefaultMaxLevels;
  // Caps resampling-set constructions per level, counting recursion.
  std::int64_t max_sweeps_per_level = kDefaultMaxSweepsPerLevel;
  // Recursion depth for the recursive sampler; 0 means plain resampling.
  int recursion_depth = kUnlimitedDepth;
  // Validate every resampling set (always on in debug builds).
  bool check_invariants = false;
};

// Levels l = 0, 1, ...; at each, resample the whole resampling set from rho
// until no vertex is bad at gamma_l. Stops at the first proper state.
// Throws BudgetExhausted when a cap is hit or when k is provably below the
// chromatic number.
SampleResult sample_iterative(const Graph& graph, std::int32_t k,
                              const GammaSchedule& schedule,
                              const RandomStream& rng,
                              int max_levels = kDefaultMaxLevels);
SampleResult sample_iterative(const Graph& graph, std::int32_t k,
                              const GammaSchedule& schedule,
                              const RandomStream& rng, const PrsOptions& options);

// As sample_iterative, but after each resampling every component of the
// resampling set is re-driven through levels 0..l on its induced subgraph.
SampleResult sample_recursive(const Graph& graph, std::int32_t k,
                              const GammaSchedule& schedule,
                              const RandomStream& rng,
                              int max_levels = kDefaultMaxLevels);
SampleResult sample_recursive(const Graph& graph, std::int32_t k,
                              const GammaSchedule& schedule,
                              const RandomStream& rng, const PrsOptions& options);

// The inner loop at one level: returns a state with no bad vertex at
// gamma_level. `depth` bounds the recursion into components (0 = none).
// When `stats` is given, events are added to it.
SoftState gamma_prs_at_level(const Graph& graph, SoftState state, int level,
                             const GammaSchedule& schedule,
                             const RandomStream& rng, int depth = kUnlimitedDepth,
                             RunStats* stats = nullptr);

// Builds the error raised when a sampler gives up. If k is below a proven
// chromatic lower bound the reason is kInfeasible regardless of `reason`.
BudgetExhausted make_budget_error(const Graph& graph, std::int32_t k,
                                  BudgetExhausted::Reason reason,
                                  const std::string& detail);

// Throws BudgetExhausted(kInfeasible) if k cannot color the graph, and
// ParameterError if k < 1.
void require_colorable(const Graph& graph, std::int32_t k);

}  // namespace softprs

#endif  // SOFTPRS_PRS_H_
