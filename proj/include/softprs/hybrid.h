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

#ifndef SOFTPRS_HYBRID_H_
#define SOFTPRS_HYBRID_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "softprs/graph.h"
#include "softprs/prs.h"
#include "softprs/random_stream.h"
#include "softprs/soft_state.h"
#include "softprs/solvers.h"

namespace softprs {

struct HybridConfig {
  SolverKind solver = SolverKind::kHuberCftp;
  // Worker threads for component solving; output does not depend on it.
  int threads = 1;
  // 0 solves components directly; d > 0 solves them with a depth d - 1
  // hybrid on the component graph.
  int nesting_depth = 0;
  // Experimental: lower gamma until at most `threads` components remain.
  bool adaptive = false;
  GammaSchedule schedule{0.9};
  int max_levels = kDefaultMaxLevels;
  std::int64_t max_inner_sweeps = kDefaultMaxSweepsPerLevel;
  CftpOptions cftp;
  std::int64_t max_nrs_trials = kDefaultMaxNrsTrials;
  // Validate every resampling set (always on in debug builds).
  bool check_invariants = false;
};

// Throws ParameterError for out-of-range fields.
void validate(const HybridConfig& config);

// Level loop where each resampling-set component is replaced by an exact
// solver draw followed by fresh uniforms; sweeps repeat until nothing at the
// level is bad. Components with k <= 2 * max degree go to the rejection
// solver; a bounding chain that times out falls back to it too.
SampleResult sample_hybrid(const Graph& graph, std::int32_t k,
                           const HybridConfig& config, const RandomStream& rng);

struct DispatchPlan {
  // Component indices per worker.
  std::vector<std::vector<std::size_t>> assignment;
  std::vector<std::size_t> loads;
  // Total size over the heaviest load; 1 when there is nothing to do.
  double speedup = 1.0;
};

// Longest-processing-time-first: largest component to the least loaded
// worker, ties to the lower index.
DispatchPlan plan_parallel_dispatch(std::span<const std::size_t> sizes,
                                    int workers);

// Experimental schedule: at each gamma, if the resampling set has more than
// `workers` components, move to the next level without solving; otherwise
// solve one sweep and look again at the same gamma.
SampleResult run_adaptive_gamma(const Graph& graph, std::int32_t k, int workers,
                                const RandomStream& rng);
SampleResult run_adaptive_gamma(const Graph& graph, std::int32_t k,
                                const HybridConfig& config,
                                const RandomStream& rng);

}  // namespace softprs

#endif  // SOFTPRS_HYBRID_H_
