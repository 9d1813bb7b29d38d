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

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "doctest.h"
#include "softprs/errors.h"
#include "softprs/graph.h"
#include "softprs/soft_state.h"

namespace softprs {
namespace {

SoftState uniform_state(std::size_t n, std::int32_t k, Color c, double u) {
  return SoftState{k, std::vector<Color>(n, c), std::vector<double>(n, u)};
}

// Straight from the definitions, with no cached powers.
bool oracle_passive(const SoftState& x, const Graph& g, double gamma, Vertex v) {
  return x.uniforms[v] <= std::pow(gamma, g.degree(v));
}

bool oracle_bad(const SoftState& x, const Graph& g, double gamma, Vertex v) {
  int conflicts = 0;
  for (Vertex w : g.neighbors(v)) {
    if (x.colors[w] == x.colors[v] && !oracle_passive(x, g, gamma, w)) ++conflicts;
  }
  return x.uniforms[v] > std::pow(gamma, conflicts);
}

// Fixed-point closure: repeatedly pull in non-passive neighbors of interior
// vertices, then attach the passive neighbors as boundary.
std::set<Vertex> oracle_resampling_vertices(const SoftState& x, const Graph& g,
                                            double gamma) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  std::set<Vertex> interior;
  for (Vertex v = 0; v < n; ++v) {
    if (oracle_bad(x, g, gamma, v)) interior.insert(v);
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (Vertex v = 0; v < n; ++v) {
      if (interior.count(v) || oracle_passive(x, g, gamma, v)) continue;
      for (Vertex w : g.neighbors(v)) {
        if (interior.count(w)) {
          interior.insert(v);
          grew = true;
          break;
        }
      }
    }
  }
  std::set<Vertex> all = interior;
  for (Vertex v : interior) {
    for (Vertex w : g.neighbors(v)) all.insert(w);
  }
  return all;
}

TEST_CASE("reference sampling") {
  const Graph g = generate(CycleFamily{10});
  RandomStream r1(17), r2(17);
  const SoftState a = sample_reference(g, 5, r1);
  const SoftState b = sample_reference(g, 5, r2);
  CHECK(a == b);
  for (std::size_t v = 0; v < a.size(); ++v) {
    CHECK(a.colors[v] >= 1);
    CHECK(a.colors[v] <= 5);
    CHECK(a.uniforms[v] > 0.0);
    CHECK(a.uniforms[v] < 1.0);
  }
  RandomStream r3(1);
  const SoftState ones = sample_reference(g, 1, r3);
  for (Color c : ones.colors) CHECK(c == 1);
  RandomStream r4(1);
  CHECK_THROWS_AS(sample_reference(g, 0, r4), ParameterError);
}

TEST_CASE("reference color marginal is uniform") {
  const Graph g = generate(CycleFamily{10});
  std::array<int, 5> counts{};
  RandomStream rng(2024);
  for (int t = 0; t < 10000; ++t) {
    const SoftState x = sample_reference(g, 5, rng);
    for (Color c : x.colors) ++counts[c - 1];
  }
  for (int c : counts) CHECK(std::abs(c / 100000.0 - 0.2) < 0.01);
}

TEST_CASE("triangle conflicts") {
  const Graph tri = generate(CompleteFamily{3});
  const SoftState x = uniform_state(3, 3, 1, 0.9);
  for (Vertex v = 0; v < 3; ++v) {
    CHECK(conflict_count(x, tri, 0.5, v) == 2);
    CHECK(is_bad(x, tri, 0.5, v));
    CHECK(conflict_count(x, tri, 1.0, v) == 0);
    CHECK_FALSE(is_bad(x, tri, 1.0, v));
  }
  CHECK(bad_set(x, tri, 0.5).size() == 3);
  CHECK(bad_set(x, tri, 1.0).empty());
}

TEST_CASE("passivity thresholds") {
  const Graph grid = generate(GridFamily{3});
  const Vertex centre = 4;
  REQUIRE(grid.degree(centre) == 4);
  SoftState x = uniform_state(9, 3, 1, 0.5);
  CHECK(is_passive(x, grid, 0.9, centre));
  CHECK(is_passive(x, grid, 1.0, centre));
  CHECK_FALSE(is_passive(x, grid, 0.0, centre));
  // Ties count as passive and as not bad.
  x.uniforms[centre] = std::pow(0.9, 4);
  CHECK(is_passive(x, grid, 0.9, centre));
  const Graph edge = load_edge_list_text("0 1\n");
  SoftState y{2, {1, 2}, {0.25, 0.5}};
  CHECK_FALSE(is_bad(y, edge, 0.5, 0));
  // An isolated vertex is passive even at gamma = 0.
  const std::vector<Edge> none;
  const Graph lone = Graph::from_edges(1, none);
  CHECK(is_passive(uniform_state(1, 2, 1, 0.99), lone, 0.0, 0));
  CHECK_THROWS_AS(GammaLevel(lone, 1.5), ParameterError);
  CHECK_THROWS_AS(GammaLevel(lone, -0.1), ParameterError);
}

TEST_CASE("gamma schedule") {
  const GammaSchedule s(0.9);
  CHECK(s.gamma(0) == 1.0);
  for (int l = 0; l < 50; ++l) CHECK(s.gamma(l + 1) < s.gamma(l));
  CHECK(s.gamma(400) < 1e-15);
  CHECK_THROWS_AS(GammaSchedule(1.0), ParameterError);
  CHECK_THROWS_AS(GammaSchedule(0.0), ParameterError);
}

TEST_CASE("proper colorings") {
  const Graph cycle = generate(CycleFamily{10});
  std::vector<Color> alternating;
  for (int v = 0; v < 10; ++v) alternating.push_back(1 + v % 2);
  CHECK(is_proper(alternating, cycle));
  CHECK_FALSE(is_proper(uniform_state(3, 3, 1, 0.5), generate(CompleteFamily{3})));

  const Graph c4 = generate(CycleFamily{4});
  int proper = 0;
  for (int code = 0; code < 81; ++code) {
    std::vector<Color> colors;
    for (int v = 0, rest = code; v < 4; ++v, rest /= 3) colors.push_back(1 + rest % 3);
    if (is_proper(colors, c4)) ++proper;
  }
  CHECK(proper == 18);
}

TEST_CASE("single bad vertex with passive neighbours") {
  const Graph star = load_edge_list_text("0 1\n0 2\n0 3\n");
  // Leaf 1 is active and shares the centre's color; leaves 2 and 3 are passive.
  const SoftState x{3, {1, 1, 1, 2}, {0.9, 0.8, 0.1, 0.1}};
  const GammaLevel level(star, 0.5);
  CHECK(level.is_bad(x, 0));
  const auto bad = level.bad_set(x);
  CHECK(bad == std::vector<Vertex>{0, 1});
  const ResamplingSet set = level.build_resampling_set(x, bad);
  CHECK(set.interior == std::vector<Vertex>{0, 1});
  CHECK(set.boundary == std::vector<Vertex>{2, 3});
  CHECK(set.components.size() == 1);
  CHECK(!check_resampling_set(set, x, level).has_value());
}

TEST_CASE("isolated bad vertex") {
  const Graph path = load_edge_list_text("0 1\n1 2\n2 3\n3 4\n");
  // Vertex 2's same-colored neighbours start passive.
  SoftState x{2, {1, 2, 2, 2, 1}, {0.01, 0.01, 0.99, 0.01, 0.01}};
  const GammaLevel level(path, 0.9);
  CHECK_FALSE(level.is_bad(x, 2));
  x.uniforms[3] = 0.95;
  const auto bad = level.bad_set(x);
  REQUIRE(!bad.empty());
  const ResamplingSet set = level.build_resampling_set(x, bad);
  CHECK(!check_resampling_set(set, x, level).has_value());
  for (Vertex v : set.boundary) CHECK(level.is_passive(x, v));
}

TEST_CASE("passive boundary joins two interior regions") {
  // 0-1-2 path: 0 and 2 bad with private partners, 1 passive in the middle.
  const Graph g = load_edge_list_text("0 1\n1 2\n0 3\n2 4\n");
  SoftState x{2, {1, 2, 1, 1, 1}, {0.99, 0.01, 0.99, 0.99, 0.99}};
  const GammaLevel level(g, 0.5);
  const auto bad = level.bad_set(x);
  CHECK(bad == std::vector<Vertex>{0, 2, 3, 4});
  const ResamplingSet set = level.build_resampling_set(x, bad);
  CHECK(set.boundary == std::vector<Vertex>{1});
  REQUIRE(set.components.size() == 1);
  CHECK(set.components[0].size() == 5);
}

TEST_CASE("all non-passive graph gives whole components") {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {3, 4}, {5, 6}};
  const Graph g = Graph::from_edges(7, edges);
  SoftState x{3, {1, 1, 2, 3, 1, 1, 1}, std::vector<double>(7, 0.99)};
  const GammaLevel level(g, 0.1);
  const auto bad = level.bad_set(x);
  const ResamplingSet set = level.build_resampling_set(x, bad);
  CHECK(set.boundary.empty());
  CHECK(set.interior == std::vector<Vertex>{0, 1, 2, 5, 6});
  REQUIRE(set.components.size() == 2);
  CHECK(set.components[0] == std::vector<Vertex>{0, 1, 2});
  CHECK(set.components[1] == std::vector<Vertex>{5, 6});
}

TEST_CASE("resampling vertices") {
  const Graph g = generate(CycleFamily{8});
  RandomStream rng(8);
  const SoftState x = sample_reference(g, 4, rng);
  SoftState y = x;
  RandomStream r2(9);
  resample_vertices(y, std::vector<Vertex>{}, r2);
  CHECK(y == x);
  const std::vector<Vertex> pick{2, 5};
  resample_vertices(y, pick, r2);
  for (Vertex v = 0; v < 8; ++v) {
    if (v == 2 || v == 5) continue;
    CHECK(y.colors[v] == x.colors[v]);
    CHECK(y.uniforms[v] == x.uniforms[v]);
  }
  CHECK(y.uniforms[2] != x.uniforms[2]);

  std::array<int, 4> counts{};
  RandomStream r3(10);
  SoftState z = x;
  const std::vector<Vertex> one{3};
  for (int t = 0; t < 100000; ++t) {
    resample_vertices(z, one, r3);
    ++counts[z.colors[3] - 1];
  }
  for (int c : counts) CHECK(std::abs(c / 100000.0 - 0.25) < 0.01);
}

TEST_CASE("resampling set matches a fixed-point oracle on C10") {
  const Graph g = generate(CycleFamily{10});
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 200; ++seed) {
    RandomStream rng(seed);
    const SoftState x = sample_reference(g, 5, rng);
    const auto set = build_resampling_set(x, g, 0.5);
    if (set.interior.empty()) continue;
    ++checked;
    const auto expected = oracle_resampling_vertices(x, g, 0.5);
    const auto got = set.vertices();
    CHECK(std::vector<Vertex>(expected.begin(), expected.end()) == got);
  }
}

TEST_CASE("predicate and set properties on random states") {
  const std::vector<Graph> graphs{generate(PetersenFamily{}), generate(GridFamily{5}),
                                  generate(RandomRegularFamily{60, 4, 3}),
                                  generate(CompleteFamily{7})};
  RandomStream rng(123);
  for (const Graph& g : graphs) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto k = static_cast<std::int32_t>(2 + rng.below(5));
      const SoftState x = sample_reference(g, k, rng);
      const double gamma = rng.open_unit();
      const double gamma_hi = gamma + (1 - gamma) * rng.open_unit();
      const GammaLevel level(g, gamma);
      const GammaLevel level_hi(g, gamma_hi);
      for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        REQUIRE(level.is_passive(x, v) == oracle_passive(x, g, gamma, v));
        REQUIRE(level.is_bad(x, v) == oracle_bad(x, g, gamma, v));
        if (level.is_passive(x, v)) REQUIRE_FALSE(level.is_bad(x, v));
      }
      if (level.bad_set(x).empty()) CHECK(level_hi.bad_set(x).empty());
      if (is_proper(x, g)) CHECK(level.bad_set(x).empty());
      const auto bad = level.bad_set(x);
      if (!bad.empty()) {
        const ResamplingSet set = level.build_resampling_set(x, bad);
        const auto problem = check_resampling_set(set, x, level);
        CHECK_MESSAGE(!problem.has_value(), problem.value_or(""));
      }
    }
  }
}

TEST_CASE("gamma zero marks every monochromatic-edge vertex bad") {
  const Graph g = generate(CycleFamily{6});
  SoftState x{2, {1, 1, 2, 2, 1, 1}, std::vector<double>(6, 0.3)};
  const auto bad = bad_set(x, g, 0.0);
  CHECK(bad == std::vector<Vertex>{0, 1, 2, 3, 4, 5});
}

}  // namespace
}  // namespace softprs
