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

#include "softprs/soft_state.h"

#include <algorithm>
#include <cmath>

#include "softprs/errors.h"

namespace softprs {

GammaSchedule::GammaSchedule(double base) : base_(base) {
  if (!(base > 0.0 && base < 1.0)) {
    throw ParameterError("gamma base must lie in (0, 1), got " +
                         std::to_string(base));
  }
}

double GammaSchedule::gamma(int level) const {
  if (level < 0) throw ParameterError("negative gamma level");
  return std::pow(base_, level);
}

std::size_t ResamplingSet::max_component_size() const {
  std::size_t best = 0;
  for (const auto& c : components) best = std::max(best, c.size());
  return best;
}

std::vector<Vertex> ResamplingSet::vertices() const {
  std::vector<Vertex> out;
  out.reserve(size());
  std::merge(interior.begin(), interior.end(), boundary.begin(), boundary.end(),
             std::back_inserter(out));
  return out;
}

GammaLevel::GammaLevel(const Graph& graph, double gamma)
    : graph_(&graph), gamma_(gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ParameterError("gamma must lie in [0, 1], got " + std::to_string(gamma));
  }
  powers_.resize(static_cast<std::size_t>(graph.max_degree()) + 1);
  for (std::size_t d = 0; d < powers_.size(); ++d) {
    powers_[d] = std::pow(gamma, static_cast<double>(d));  // pow(0, 0) == 1
  }
}

int GammaLevel::conflict_count(const SoftState& state, Vertex v) const {
  const Color c = state.colors[v];
  int count = 0;
  for (Vertex w : graph_->neighbors(v)) {
    if (state.colors[w] == c && !is_passive(state, w)) ++count;
  }
  return count;
}

std::vector<Vertex> GammaLevel::bad_set(const SoftState& state) const {
  std::vector<Vertex> bad;
  const auto n = static_cast<Vertex>(graph_->vertex_count());
  for (Vertex v = 0; v < n; ++v) {
    if (is_bad(state, v)) bad.push_back(v);
  }
  return bad;
}

bool GammaLevel::any_bad(const SoftState& state) const {
  const auto n = static_cast<Vertex>(graph_->vertex_count());
  for (Vertex v = 0; v < n; ++v) {
    if (is_bad(state, v)) return true;
  }
  return false;
}

ResamplingSet GammaLevel::build_resampling_set(
    const SoftState& state, std::span<const Vertex> bad) const {
  enum : std::uint8_t { kOutside = 0, kInterior = 1, kBoundary = 2 };
  std::vector<std::uint8_t> mark(graph_->vertex_count(), kOutside);
  ResamplingSet set;
  std::vector<Vertex> queue(bad.begin(), bad.end());
  for (Vertex v : bad) mark[v] = kInterior;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (Vertex w : graph_->neighbors(v)) {
      if (mark[w] != kOutside) continue;
      if (is_passive(state, w)) {
        mark[w] = kBoundary;
        set.boundary.push_back(w);
      } else {
        mark[w] = kInterior;
        queue.push_back(w);
      }
    }
  }
  set.interior = std::move(queue);
  std::sort(set.interior.begin(), set.interior.end());
  std::sort(set.boundary.begin(), set.boundary.end());

  // Components of the induced subgraph, seeded in increasing vertex order so
  // they come out sorted by canonical id.
  const std::vector<Vertex> members = set.vertices();
  std::vector<Vertex> stack;
  for (Vertex s : members) {
    if (mark[s] == kOutside) continue;  // already labeled
    std::vector<Vertex> component;
    mark[s] = kOutside;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      component.push_back(v);
      for (Vertex w : graph_->neighbors(v)) {
        if (mark[w] != kOutside) {
          mark[w] = kOutside;
          stack.push_back(w);
        }
      }
    }
    std::sort(component.begin(), component.end());
    set.components.push_back(std::move(component));
  }
  return set;
}

SoftState sample_reference(const Graph& graph, std::int32_t k,
                           RandomStream& rng) {
  if (k < 1) throw ParameterError("k must be at least 1");
  SoftState state;
  state.k = k;
  const std::size_t n = graph.vertex_count();
  state.colors.resize(n);
  state.uniforms.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    state.colors[v] = rng.color(k);
    state.uniforms[v] = rng.open_unit();
  }
  return state;
}

int conflict_count(const SoftState& state, const Graph& graph, double gamma,
                   Vertex v) {
  return GammaLevel(graph, gamma).conflict_count(state, v);
}

bool is_passive(const SoftState& state, const Graph& graph, double gamma,
                Vertex v) {
  return GammaLevel(graph, gamma).is_passive(state, v);
}

bool is_bad(const SoftState& state, const Graph& graph, double gamma, Vertex v) {
  return GammaLevel(graph, gamma).is_bad(state, v);
}

std::vector<Vertex> bad_set(const SoftState& state, const Graph& graph,
                            double gamma) {
  return GammaLevel(graph, gamma).bad_set(state);
}

ResamplingSet build_resampling_set(const SoftState& state, const Graph& graph,
                                   double gamma) {
  const GammaLevel level(graph, gamma);
  const std::vector<Vertex> bad = level.bad_set(state);
  return level.build_resampling_set(state, bad);
}

void resample_vertices(SoftState& state, std::span<const Vertex> vertices,
                       RandomStream& rng) {
  for (Vertex v : vertices) {
    state.colors[v] = rng.color(state.k);
    state.uniforms[v] = rng.open_unit();
  }
}

bool is_proper(std::span<const Color> colors, const Graph& graph) {
  const auto n = static_cast<Vertex>(graph.vertex_count());
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : graph.neighbors(v)) {
      if (v < w && colors[v] == colors[w]) return false;
    }
  }
  return true;
}

std::optional<std::string> check_resampling_set(const ResamplingSet& set,
                                                const SoftState& state,
                                                const GammaLevel& level) {
  const Graph& g = level.graph();
  enum : std::uint8_t { kOutside = 0, kInterior = 1, kBoundary = 2 };
  std::vector<std::uint8_t> mark(g.vertex_count(), kOutside);
  auto vtx = [](Vertex v) { return "vertex " + std::to_string(v); };
  for (Vertex v : set.interior) mark[v] = kInterior;
  for (Vertex v : set.boundary) {
    if (mark[v] == kInterior) return vtx(v) + " is both interior and boundary";
    mark[v] = kBoundary;
  }
  for (Vertex v : level.bad_set(state)) {
    if (mark[v] != kInterior) return "bad " + vtx(v) + " is not interior";
  }
  for (Vertex v : set.interior) {
    if (level.is_passive(state, v)) return "interior " + vtx(v) + " is passive";
    for (Vertex w : g.neighbors(v)) {
      if (mark[w] == kOutside && !level.is_passive(state, w)) {
        return "interior " + vtx(v) + " touches non-passive outside " + vtx(w);
      }
    }
  }
  for (Vertex v : set.boundary) {
    if (!level.is_passive(state, v)) return "boundary " + vtx(v) + " is non-passive";
  }
  std::vector<int> owner(g.vertex_count(), -1);
  std::size_t covered = 0;
  for (std::size_t c = 0; c < set.components.size(); ++c) {
    for (Vertex v : set.components[c]) {
      if (mark[v] == kOutside) return "component member " + vtx(v) + " not in R";
      if (owner[v] != -1) return vtx(v) + " in two components";
      owner[v] = static_cast<int>(c);
      ++covered;
    }
  }
  if (covered != set.size()) return "components do not cover R";
  for (std::size_t c = 0; c < set.components.size(); ++c) {
    const auto& comp = set.components[c];
    for (Vertex v : comp) {
      for (Vertex w : g.neighbors(v)) {
        if (owner[w] != -1 && owner[w] != static_cast<int>(c)) {
          return "edge joins components at " + vtx(v);
        }
      }
    }
    // Connectivity inside the component.
    std::vector<Vertex> stack{comp.front()};
    std::vector<Vertex> seen{comp.front()};
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (owner[w] == static_cast<int>(c) &&
            std::find(seen.begin(), seen.end(), w) == seen.end()) {
          seen.push_back(w);
          stack.push_back(w);
        }
      }
    }
    if (seen.size() != comp.size()) {
      return "component with id " + std::to_string(comp.front()) + " is disconnected";
    }
  }
  return std::nullopt;
}

}  // namespace softprs
