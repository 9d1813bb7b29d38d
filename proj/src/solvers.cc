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

#include "softprs/solvers.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "softprs/errors.h"

namespace softprs {
namespace {

// Fixed-width color sets, one block of words per vertex.
class ColorSets {
 public:
  ColorSets(std::size_t count, std::int32_t k)
      : words_((static_cast<std::size_t>(k) + 63) / 64),
        bits_(count * words_, 0) {}

  std::size_t words() const { return words_; }
  std::uint64_t* at(std::size_t i) { return bits_.data() + i * words_; }
  const std::uint64_t* at(std::size_t i) const { return bits_.data() + i * words_; }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

bool test_bit(const std::uint64_t* set, int c) {
  return (set[c >> 6] >> (c & 63)) & 1u;
}
void set_bit(std::uint64_t* set, int c) { set[c >> 6] |= std::uint64_t{1} << (c & 63); }

std::vector<double> powers_up_to(double gamma, int max_exponent) {
  std::vector<double> powers(static_cast<std::size_t>(max_exponent) + 1);
  for (std::size_t d = 0; d < powers.size(); ++d) {
    powers[d] = std::pow(gamma, static_cast<double>(d));
  }
  return powers;
}

int max_parent_degree(const ComponentProblem& problem) {
  int best = 0;
  for (int d : problem.parent_degree) best = std::max(best, d);
  return best;
}

bool accepts(const ComponentProblem& problem, std::span<const Color> colors,
             std::span<const double> uniforms, const std::vector<double>& powers) {
  const Graph& local = problem.component.graph;
  const auto m = static_cast<Vertex>(problem.size());
  for (Vertex i = 0; i < m; ++i) {
    int conflicts = 0;
    for (Vertex j : local.neighbors(i)) {
      if (colors[j] == colors[i] && uniforms[j] > powers[problem.parent_degree[j]]) {
        ++conflicts;
      }
    }
    for (const ExteriorNeighbor& e : problem.exterior[i]) {
      if (e.non_passive && e.color == colors[i]) ++conflicts;
    }
    if (uniforms[i] > powers[conflicts]) return false;
  }
  return true;
}

}  // namespace

ComponentProblem make_component_problem(const Graph& graph,
                                        const SoftState& state,
                                        std::span<const Vertex> component,
                                        double gamma, RandomStream rng) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ParameterError("gamma must lie in [0, 1]");
  }
  ComponentProblem problem;
  problem.component = induced_subgraph(graph, component);
  problem.k = state.k;
  problem.gamma = gamma;
  problem.rng = std::move(rng);

  std::vector<Vertex> sorted(component.begin(), component.end());
  std::sort(sorted.begin(), sorted.end());
  const std::vector<double> powers = powers_up_to(gamma, graph.max_degree());
  problem.parent_degree.reserve(component.size());
  problem.exterior.resize(component.size());
  for (std::size_t i = 0; i < component.size(); ++i) {
    const Vertex v = component[i];
    problem.parent_degree.push_back(graph.degree(v));
    for (Vertex w : graph.neighbors(v)) {
      if (std::binary_search(sorted.begin(), sorted.end(), w)) continue;
      problem.exterior[i].push_back(
          {w, state.colors[w], state.uniforms[w] > powers[graph.degree(w)]});
    }
  }
  return problem;
}

bool component_accepts(const ComponentProblem& problem,
                       std::span<const Color> colors,
                       std::span<const double> uniforms) {
  return accepts(problem, colors, uniforms,
                 powers_up_to(problem.gamma, max_parent_degree(problem)));
}

NrsResult solve_nrs(const ComponentProblem& problem, std::int64_t max_trials) {
  const std::vector<double> powers =
      powers_up_to(problem.gamma, max_parent_degree(problem));
  RandomStream rng = problem.rng;
  NrsResult result;
  result.colors.resize(problem.size());
  result.uniforms.resize(problem.size());
  while (result.trials < max_trials) {
    ++result.trials;
    for (std::size_t i = 0; i < problem.size(); ++i) {
      result.colors[i] = rng.color(problem.k);
      result.uniforms[i] = rng.open_unit();
    }
    if (accepts(problem, result.colors, result.uniforms, powers)) return result;
  }
  throw BudgetExhausted("component rejection sampler gave up after " +
                            std::to_string(max_trials) + " trials on a component of " +
                            std::to_string(problem.size()) + " vertices",
                        BudgetExhausted::Reason::kTrials);
}

bool cftp_applicable(const ComponentProblem& problem) {
  return problem.k > 2 * problem.component.graph.max_degree();
}

CftpResult solve_cftp_huber(const ComponentProblem& problem,
                            const CftpOptions& options) {
  const Graph& g = problem.component.graph;
  const std::int32_t k = problem.k;
  const std::size_t m = problem.size();
  if (k <= g.max_degree()) {
    throw SolverTimeout("bounding chain needs k > max degree (k=" +
                        std::to_string(k) + ", max degree " +
                        std::to_string(g.max_degree()) + ")");
  }
  ColorSets sets(m, k);
  std::vector<int> size(m);
  std::vector<Color> single(m);
  const std::size_t words = sets.words();
  std::vector<std::uint64_t> possible(words), definite(words), seen(words);

  auto reset = [&] {
    for (std::size_t v = 0; v < m; ++v) {
      std::uint64_t* s = sets.at(v);
      std::fill(s, s + words, 0);
      for (int c = 0; c < k; ++c) set_bit(s, c);
      size[v] = k;
    }
  };

  auto update = [&](std::uint64_t time, Vertex v) {
    std::fill(possible.begin(), possible.end(), 0);
    std::fill(definite.begin(), definite.end(), 0);
    for (Vertex w : g.neighbors(v)) {
      const std::uint64_t* s = sets.at(w);
      for (std::size_t i = 0; i < words; ++i) possible[i] |= s[i];
      if (size[w] == 1) set_bit(definite.data(), single[w] - 1);
    }
    std::fill(seen.begin(), seen.end(), 0);
    std::uint64_t* next = sets.at(v);
    std::fill(next, next + words, 0);
    int distinct = 0, count = 0;
    Color last = 0;
    CounterRng draw = problem.rng.slot(time, static_cast<std::uint64_t>(v));
    const int needed = g.degree(v) + 1;
    for (;;) {
      const int c = static_cast<int>(draw.below(static_cast<std::uint64_t>(k)));
      if (!test_bit(seen.data(), c)) {
        set_bit(seen.data(), c);
        ++distinct;
        if (!test_bit(definite.data(), c)) {
          set_bit(next, c);
          ++count;
          last = c + 1;
        }
      }
      // Every coupled state accepts c, or the prefix already holds a color
      // free for every state.
      if (!test_bit(possible.data(), c) || distinct >= needed) break;
    }
    size[v] = count;
    single[v] = last;
  };

  CftpResult result;
  for (int epoch = 0; epoch <= options.max_epochs; ++epoch) {
    const std::uint64_t horizon = std::uint64_t{1} << epoch;
    reset();
    for (std::uint64_t t = horizon; t >= 1; --t) {
      for (Vertex v = 0; v < static_cast<Vertex>(m); ++v) update(t, v);
    }
    result.sweeps += static_cast<std::int64_t>(horizon);
    result.epochs = epoch + 1;
    if (std::all_of(size.begin(), size.end(), [](int s) { return s == 1; })) {
      result.colors = single;
      if (!is_proper(result.colors, g)) {
        throw std::logic_error("bounding chain coalesced to an improper coloring");
      }
      return result;
    }
  }
  throw SolverTimeout("bounding chain did not coalesce within " +
                      std::to_string(options.max_epochs) + " doubling epochs");
}

}  // namespace softprs
