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

#ifndef SOFTPRS_SOFT_STATE_H_
#define SOFTPRS_SOFT_STATE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "softprs/graph.h"
#include "softprs/random_stream.h"

namespace softprs {

using Color = std::int32_t;

// A realization x = (c_v, u_v): a color in [1, k] and an auxiliary uniform in
// (0, 1) per vertex.
struct SoftState {
  std::int32_t k = 0;
  std::vector<Color> colors;
  std::vector<double> uniforms;

  std::size_t size() const { return colors.size(); }
  bool operator==(const SoftState&) const = default;
};

// Geometric gamma sequence gamma_l = base^l, so gamma_0 = 1 and the sequence
// decreases strictly to 0.
class GammaSchedule {
 public:
  explicit GammaSchedule(double base = 0.9);

  double base() const { return base_; }
  double gamma(int level) const;

 private:
  double base_;
};

// Output of the resampling-set expansion. All vertex lists are sorted.
// Components partition interior + boundary and are ordered by their smallest
// vertex, which is the component's canonical id.
struct ResamplingSet {
  std::vector<Vertex> interior;
  std::vector<Vertex> boundary;
  std::vector<std::vector<Vertex>> components;

  std::size_t size() const { return interior.size() + boundary.size(); }
  std::size_t max_component_size() const;
  // interior + boundary, sorted.
  std::vector<Vertex> vertices() const;
};

// The bad/passive predicates of one gamma level on one graph, with the
// thresholds gamma^d cached per degree.
//
//   passive(v)  <=>  u_v <= gamma^{d_v}
//   n_v         =    #{w in N(v) : c_w = c_v and w not passive}
//   bad(v)      <=>  u_v >  gamma^{n_v}
//
// with 0^0 = 1. A passive vertex is never bad.
class GammaLevel {
 public:
  // Throws ParameterError unless gamma is in [0, 1].
  GammaLevel(const Graph& graph, double gamma);

  double gamma() const { return gamma_; }
  const Graph& graph() const { return *graph_; }
  double threshold(int exponent) const { return powers_[exponent]; }

  bool is_passive(const SoftState& state, Vertex v) const {
    return state.uniforms[v] <= powers_[graph_->degree(v)];
  }
  int conflict_count(const SoftState& state, Vertex v) const;
  bool is_bad(const SoftState& state, Vertex v) const {
    return state.uniforms[v] > powers_[conflict_count(state, v)];
  }
  std::vector<Vertex> bad_set(const SoftState& state) const;
  bool any_bad(const SoftState& state) const;

  // Expands from `bad` through non-passive vertices; passive neighbors become
  // boundary and stop the expansion. Components are taken in the subgraph
  // induced by interior + boundary.
  ResamplingSet build_resampling_set(const SoftState& state,
                                     std::span<const Vertex> bad) const;

 private:
  const Graph* graph_;
  double gamma_;
  std::vector<double> powers_;
};

// Draws x ~ rho: independent uniform colors in [1, k] and uniforms in (0, 1).
SoftState sample_reference(const Graph& graph, std::int32_t k,
                           RandomStream& rng);

int conflict_count(const SoftState& state, const Graph& graph, double gamma,
                   Vertex v);
bool is_passive(const SoftState& state, const Graph& graph, double gamma,
                Vertex v);
bool is_bad(const SoftState& state, const Graph& graph, double gamma, Vertex v);
std::vector<Vertex> bad_set(const SoftState& state, const Graph& graph,
                            double gamma);
ResamplingSet build_resampling_set(const SoftState& state, const Graph& graph,
                                   double gamma);

// Fresh (color, uniform) pairs for `vertices`, in the given order; every other
// vertex is left untouched.
void resample_vertices(SoftState& state, std::span<const Vertex> vertices,
                       RandomStream& rng);

bool is_proper(std::span<const Color> colors, const Graph& graph);
inline bool is_proper(const SoftState& state, const Graph& graph) {
  return is_proper(state.colors, graph);
}

// Checks every ResamplingSet invariant against the state it was built from.
// Returns a description of the first violation, or nullopt.
std::optional<std::string> check_resampling_set(const ResamplingSet& set,
                                                const SoftState& state,
                                                const GammaLevel& level);

}  // namespace softprs

#endif  // SOFTPRS_SOFT_STATE_H_
