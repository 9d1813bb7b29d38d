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
#include <map>
#include <numeric>

#include "doctest.h"
#include "softprs/errors.h"
#include "softprs/graph.h"
#include "softprs/hybrid.h"
#include "softprs/prs.h"
#include "softprs/verify.h"

namespace softprs {
namespace {

template <typename T>
T median(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  return values[values.size() / 2];
}

HybridConfig with_solver(SolverKind solver) {
  HybridConfig c;
  c.solver = solver;
  return c;
}

ColoringSampler hybrid_sampler(const Graph& g, std::int32_t k, HybridConfig config) {
  return [&g, k, config](const RandomStream& rng) {
    return sample_hybrid(g, k, config, rng).coloring;
  };
}

TEST_CASE("dispatch plan") {
  const std::vector<std::size_t> sizes{9, 1, 1, 1};
  const DispatchPlan plan = plan_parallel_dispatch(sizes, 2);
  CHECK(plan.assignment[0] == std::vector<std::size_t>{0});
  CHECK(plan.assignment[1] == std::vector<std::size_t>{1, 2, 3});
  CHECK(plan.loads == std::vector<std::size_t>{9, 3});
  CHECK(plan.speedup == doctest::Approx(12.0 / 9.0));

  const std::vector<std::size_t> pair{5, 5};
  const DispatchPlan one = plan_parallel_dispatch(pair, 1);
  CHECK(one.loads == std::vector<std::size_t>{10});
  CHECK(one.speedup == 1.0);

  const std::vector<std::size_t> many{17, 9, 4, 3, 3, 2};
  const DispatchPlan wide = plan_parallel_dispatch(many, 8);
  CHECK(*std::max_element(wide.loads.begin(), wide.loads.end()) == 17);
  CHECK(wide.speedup == doctest::Approx(38.0 / 17.0));
  CHECK(std::accumulate(wide.loads.begin(), wide.loads.end(), std::size_t{0}) == 38);

  CHECK(plan_parallel_dispatch(std::vector<std::size_t>{}, 3).speedup == 1.0);
  CHECK_THROWS_AS(plan_parallel_dispatch(sizes, 0), ParameterError);
}

TEST_CASE("hybrid samplers are uniform on C4") {
  const Graph c4 = generate(CycleFamily{4});
  for (SolverKind solver : {SolverKind::kNrs, SolverKind::kHuberCftp}) {
    CHECK_FALSE(uniformity_test(hybrid_sampler(c4, 3, with_solver(solver)), c4, 3, 9000,
                                RandomStream(10))
                    .rejected_at_1pct);
  }
}

TEST_CASE("bounding chain path is exercised and uniform with five colors") {
  const Graph c4 = generate(CycleFamily{4});
  const HybridConfig huber = with_solver(SolverKind::kHuberCftp);
  std::int64_t solves = 0, fallbacks = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const RunStats stats = sample_hybrid(c4, 5, huber, RandomStream(s)).stats;
    solves += stats.cftp_solves;
    fallbacks += stats.cftp_fallbacks;
    CHECK(stats.nrs_trials == 0);
  }
  CHECK(solves > 0);
  CHECK(fallbacks == 0);
  CHECK_FALSE(uniformity_test(hybrid_sampler(c4, 5, huber), c4, 5, 260 * 25, RandomStream(11))
                  .rejected_at_1pct);
}

TEST_CASE("solvers are exchangeable on C4") {
  const Graph c4 = generate(CycleFamily{4});
  CHECK_FALSE(two_sample_test(hybrid_sampler(c4, 5, with_solver(SolverKind::kNrs)),
                              hybrid_sampler(c4, 5, with_solver(SolverKind::kHuberCftp)),
                              c4, 5, 260 * 20, RandomStream(12))
                  .rejected_at_1pct);
  const ColoringSampler iterative = [&](const RandomStream& rng) {
    return sample_iterative(c4, 3, GammaSchedule(0.9), rng).coloring;
  };
  CHECK_FALSE(two_sample_test(iterative,
                              hybrid_sampler(c4, 3, with_solver(SolverKind::kNrs)), c4, 3,
                              20000, RandomStream(13))
                  .rejected_at_1pct);
}

TEST_CASE("nested hybrid is uniform") {
  const Graph c4 = generate(CycleFamily{4});
  HybridConfig nested;
  nested.nesting_depth = 1;
  CHECK_FALSE(uniformity_test(hybrid_sampler(c4, 3, nested), c4, 3, 9000, RandomStream(14))
                  .rejected_at_1pct);
  const Graph petersen = generate(PetersenFamily{});
  nested.nesting_depth = 2;
  CHECK_FALSE(marginal_pair_test(hybrid_sampler(petersen, 4, nested), petersen, 4, 0, 5,
                                 3000, RandomStream(15))
                  .rejected_at_1pct);
}

TEST_CASE("thread count does not change the output") {
  struct Case {
    Graph graph;
    std::int32_t k;
    SolverKind solver;
  };
  const std::vector<Case> cases{
      {generate(GridFamily{10}), 20, SolverKind::kNrs},
      {generate(GridFamily{10}), 20, SolverKind::kHuberCftp},
      {generate(RandomRegularFamily{300, 3, 1}), 20, SolverKind::kHuberCftp},
      {generate(PetersenFamily{}), 5, SolverKind::kNrs}};
  for (const Case& t : cases) {
    HybridConfig c = with_solver(t.solver);
    for (std::uint64_t seed : {5, 6}) {
      c.threads = 1;
      const SampleResult base = sample_hybrid(t.graph, t.k, c, RandomStream(seed));
      CHECK(is_proper(base.coloring, t.graph));
      for (int threads : {2, 8}) {
        c.threads = threads;
        const SampleResult other = sample_hybrid(t.graph, t.k, c, RandomStream(seed));
        CHECK(other.coloring == base.coloring);
        CHECK(other.stats == base.stats);
      }
    }
  }
}

TEST_CASE("hybrid needs far fewer events than plain resampling on a grid") {
  const Graph g = generate(GridFamily{10});
  std::vector<std::int64_t> hybrid, plain;
  for (std::uint64_t s = 0; s < 5; ++s) {
    hybrid.push_back(
        sample_hybrid(g, 20, with_solver(SolverKind::kNrs), RandomStream(s)).stats.resample_events);
    plain.push_back(sample_iterative(g, 20, GammaSchedule(0.9), RandomStream(s)).stats.resample_events);
  }
  CHECK(median(hybrid) * 10 <= median(plain));
}

TEST_CASE("huber hybrid on a small cubic graph") {
  const Graph g = generate(RandomRegularFamily{50, 3, 8});
  std::vector<std::int64_t> events;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const SampleResult r = sample_hybrid(g, 10, HybridConfig{}, RandomStream(s));
    CHECK(is_proper(r.coloring, g));
    CHECK(r.stats.levels_visited == r.stats.effective_levels + r.stats.skipped_levels);
    events.push_back(r.stats.resample_events);
  }
  CHECK(median(events) <= 10);
}

TEST_CASE("inner sweeps per level stay small") {
  const Graph g = generate(GridFamily{10});
  std::vector<std::int64_t> per_level;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const SampleResult r = sample_hybrid(g, 20, with_solver(SolverKind::kNrs), RandomStream(s));
    std::map<int, std::int64_t> sweeps;
    for (const SweepRecord& rec : r.stats.per_sweep) ++sweeps[rec.level];
    for (auto [level, count] : sweeps) per_level.push_back(count);
  }
  CHECK(median(per_level) <= 3);
}

TEST_CASE("adaptive gamma") {
  const Graph g = generate(RandomRegularFamily{1000, 3, 2});
  for (std::uint64_t s = 0; s < 3; ++s) {
    const SampleResult r = run_adaptive_gamma(g, 15, 8, RandomStream(s));
    CHECK(is_proper(r.coloring, g));
    for (const SweepRecord& rec : r.stats.per_sweep) CHECK(rec.component_count <= 8);
  }
  const std::vector<Edge> none;
  const Graph lone = Graph::from_edges(1, none);
  const SampleResult trivial = run_adaptive_gamma(lone, 2, 3, RandomStream(0));
  CHECK(trivial.stats.levels_visited == 0);
}

TEST_CASE("hybrid budgets and parameters") {
  CHECK_THROWS_AS(sample_hybrid(generate(CompleteFamily{5}), 4, HybridConfig{}, RandomStream(1)),
                  BudgetExhausted);
  HybridConfig bad;
  bad.threads = 0;
  CHECK_THROWS_AS(sample_hybrid(generate(CycleFamily{5}), 3, bad, RandomStream(1)),
                  ParameterError);
  HybridConfig short_run;
  short_run.max_levels = 1;
  CHECK_THROWS_AS(sample_hybrid(generate(GridFamily{10}), 5, short_run, RandomStream(1)),
                  BudgetExhausted);
}

}  // namespace
}  // namespace softprs
