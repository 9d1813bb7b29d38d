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

#ifndef SOFTPRS_SOLVERS_H_
#define SOFTPRS_SOLVERS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "softprs/graph.h"
#include "softprs/random_stream.h"
#include "softprs/soft_state.h"

namespace softprs {

enum class SolverKind { kNrs, kHuberCftp };

inline constexpr std::int64_t kDefaultMaxNrsTrials = 10'000'000;

// A neighbor outside the component, frozen at its value when the
// resampling set was built.
struct ExteriorNeighbor {
  Vertex vertex = 0;
  Color color = 0;
  bool non_passive = false;
};

// One component of a resampling set, detached from the parent state.
struct ComponentProblem {
  // Local graph plus the local -> parent vertex map.
  InducedSubgraph component;
  // Degrees in the parent graph; passivity is judged against these.
  std::vector<int> parent_degree;
  // Per local vertex, its neighbors outside the component.
  std::vector<std::vector<ExteriorNeighbor>> exterior;
  std::int32_t k = 0;
  double gamma = 1.0;
  RandomStream rng{0};

  std::size_t size() const { return component.to_parent.size(); }
};

ComponentProblem make_component_problem(const Graph& graph,
                                        const SoftState& state,
                                        std::span<const Vertex> component,
                                        double gamma, RandomStream rng);

struct NrsResult {
  std::vector<Color> colors;
  std::vector<double> uniforms;
  std::int64_t trials = 0;
};

// Redraws (color, uniform) on every component vertex until none of them is
// bad, counting exterior conflicts. Throws BudgetExhausted(kTrials) after
// `max_trials` draws.
NrsResult solve_nrs(const ComponentProblem& problem,
                    std::int64_t max_trials = kDefaultMaxNrsTrials);

struct CftpOptions {
  // Epoch e runs 2^e sweeps from the past.
  int max_epochs = 12;
};

struct CftpResult {
  std::vector<Color> colors;
  int epochs = 0;
  std::int64_t sweeps = 0;
};

// Coupling from the past with per-vertex color-set bounding chains over a
// systematic-scan heat-bath chain on proper colorings of the component
// graph. The exterior is ignored. Throws SolverTimeout when k does not
// exceed the component's max degree or the epoch budget runs out.
CftpResult solve_cftp_huber(const ComponentProblem& problem,
                            const CftpOptions& options = {});

// True when the bounding chain is expected to coalesce quickly:
// k > 2 * max degree of the component graph. Below that it usually stalls.
bool cftp_applicable(const ComponentProblem& problem);

// True iff no component vertex is bad under the given local values.
bool component_accepts(const ComponentProblem& problem,
                       std::span<const Color> colors,
                       std::span<const double> uniforms);

}  // namespace softprs

#endif  // SOFTPRS_SOLVERS_H_
