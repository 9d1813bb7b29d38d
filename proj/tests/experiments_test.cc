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
#include "softprs/experiments.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "doctest.h"
#include "json.hpp"
#include "softprs/errors.h"

namespace softprs {
namespace {

ExperimentSpec spec_of(ExperimentKind kind, std::vector<ExperimentCase> cases,
                       int trials, std::uint64_t seed = 1) {
  ExperimentSpec spec;
  spec.kind = kind;
  spec.cases = std::move(cases);
  spec.trials = trials;
  spec.seed = seed;
  return spec;
}

TEST_CASE("summary statistics") {
  CHECK(median({3, 1, 2}) == 2);
  CHECK(median({4, 1, 3, 2}) == 2.5);
  std::vector<double> hundred(100);
  std::iota(hundred.begin(), hundred.end(), 1.0);
  CHECK(percentile(hundred, 95) == 95);
  CHECK(percentile(hundred, 100) == 100);
  CHECK(percentile({7}, 50) == 7);
  CHECK(least_squares_slope({0, 1, 2, 3}, {1, 3, 5, 7}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(median({}), ParameterError);
  CHECK_THROWS_AS(least_squares_slope({1, 1}, {0, 2}), ParameterError);
}

TEST_CASE("gamma 1 gives an empty resampling set") {
  ExperimentSpec spec =
      spec_of(ExperimentKind::kComponentStructure, {{"grid:10", 5}, {"petersen", 4}}, 30);
  spec.gammas = {1.0};
  const ExperimentReport report = run_component_structure(spec);
  REQUIRE(report.rows.size() == 2);
  for (std::size_t row = 0; row < 2; ++row) {
    for (const char* column : {"avg |Bad|", "avg |R|", "avg #comp", "max #comp",
                               "avg max comp", "p95 max comp", "E|Bad| formula"}) {
      CHECK(report.number(row, column) == 0.0);
    }
  }
}

TEST_CASE("Monte Carlo |Bad| agrees with the closed form") {
  ExperimentSpec spec = spec_of(ExperimentKind::kComponentStructure,
                                {{"grid:12", 8}, {"random-regular:200:3", 6},
                                 {"petersen", 5}},
                                400, 11);
  spec.gammas = {0.95, 0.85, 0.7};
  const ExperimentReport report = run_component_structure(spec);
  // Nine points: 3.8 SE each keeps the family-wise false alarm near 0.1%;
  // the pooled deviation catches a shared bias at 3 SE.
  double deviation = 0;
  double variance = 0;
  for (std::size_t row = 0; row < report.rows.size(); ++row) {
    const double se = report.number(row, "|Bad| SE");
    const double diff =
        report.number(row, "avg |Bad|") - report.number(row, "E|Bad| formula");
    CAPTURE(row);
    CHECK(se > 0);
    CHECK(std::abs(diff) <= 3.8 * se);
    deviation += diff;
    variance += se * se;
  }
  CHECK(std::abs(deviation) <= 3 * std::sqrt(variance));
}

TEST_CASE("component structure at the published cubic grid point") {
  ExperimentSpec spec =
      spec_of(ExperimentKind::kComponentStructure, {{"random-regular:1000:3", 15}}, 100);
  spec.gammas = {0.93};
  const ExperimentReport report = run_component_structure(spec);
  CHECK(std::abs(report.number(0, "avg |Bad|") - 2.8) <= 0.2 * 2.8);
}

TEST_CASE("aggregates recompute from the raw records") {
  ExperimentSpec spec =
      spec_of(ExperimentKind::kComponentStructure, {{"grid:8", 6}}, 25, 3);
  spec.gammas = {0.9, 0.8};
  const ExperimentReport report = run_component_structure(spec);
  REQUIRE(report.trials.size() == 50);
  for (std::size_t row = 0; row < 2; ++row) {
    double bad = 0;
    double largest = 0;
    double max_components = 0;
    for (const auto& record : report.trials) {
      if (record.row != row) continue;
      bad += record.values.at("bad");
      largest += record.values.at("max_component");
      max_components = std::max(max_components, record.values.at("components"));
    }
    CHECK(report.number(row, "avg |Bad|") == doctest::Approx(bad / 25));
    CHECK(report.number(row, "avg max comp") == doctest::Approx(largest / 25));
    CHECK(report.number(row, "max #comp") == max_components);
  }
}

TEST_CASE("reports do not depend on the thread count") {
  ExperimentSpec spec = spec_of(ExperimentKind::kHybridComparison,
                                {{"petersen", 5}, {"grid:5", 10}}, 6, 5);
  const ExperimentReport one = run_comparison_suite(spec);
  spec.threads = 3;
  ExperimentReport three = run_comparison_suite(spec);
  CHECK(three.spec.threads == 3);
  three.spec.threads = 1;
  CHECK(three == one);

  ExperimentSpec structure =
      spec_of(ExperimentKind::kComponentStructure, {{"random-regular:300:3", 12}}, 40, 2);
  structure.gammas = {0.9, 0.85};
  const ExperimentReport serial = run_component_structure(structure);
  structure.threads = 4;
  ExperimentReport parallel = run_component_structure(structure);
  parallel.spec.threads = 1;
  CHECK(parallel == serial);
}

TEST_CASE("effective levels") {
  ExperimentSpec spec = spec_of(ExperimentKind::kEffectiveLevels,
                                {{"grid:5", 20}, {"petersen", 5}, {"complete:1", 3}},
                                101);
  spec.bases = {0.99, 0.95, 0.9};
  const ExperimentReport report = run_effective_levels(spec);
  for (const char* base : {"0.99", "0.95", "0.9"}) {
    const std::string column = std::string("L_eff (") + base + "^l)";
    CHECK(report.number(0, column) <= 4);
    CHECK(report.number(1, column) <= 3);
    const double single = report.number(2, column);
    CHECK((single == 0 || single == 1));
  }
  for (const auto& record : report.trials) {
    if (record.row == 2) CHECK(record.values.at("L_eff@0.9") <= 1);
  }

  spec.bases = {};
  CHECK_THROWS_AS(run_effective_levels(spec), ParameterError);
}

TEST_CASE("comparison suite columns and envelopes") {
  ExperimentSpec small = spec_of(ExperimentKind::kSmallGraphs, {{"complete:10", 15}}, 20);
  const ExperimentReport small_report = run_comparison_suite(small);
  CHECK(small_report.columns == std::vector<std::string>{"Graph", "n", "Delta", "k", "Levels",
                                                   "Resamp.", "NRS iter.",
                                                   "NRS iter. mean"});
  CHECK(small_report.number(0, "Resamp.") <= 100);
  CHECK(small_report.number(0, "NRS iter.") >= 1);

  ExperimentSpec hybrid = spec_of(ExperimentKind::kHybridComparison, {{"grid:5", 10}}, 3);
  CHECK(report_to_csv(run_comparison_suite(hybrid)).starts_with(
      "Graph,n,Delta,k,PRS Levels,PRS Resamp.,Hybrid-NRS Levels,Hybrid-NRS Resamp.\n"));

  ExperimentSpec scaling = spec_of(ExperimentKind::kScaling, {{"grid:5", 20}}, 3);
  const ExperimentReport scaling_report = run_comparison_suite(scaling);
  CHECK(scaling_report.number(0, "k/Delta") == 5.0);
  CHECK(scaling_report.number(0, "Vtx resamp.") >= scaling_report.number(0, "Resamp."));

  ExperimentSpec cftp = spec_of(ExperimentKind::kCftpComparison, {{"cycle:50", 7}}, 5);
  const ExperimentReport cftp_report = run_comparison_suite(cftp);
  CHECK(cftp_report.number(0, "Delta(Delta+2)") == 8);
  CHECK(cftp_report.number(0, "CFTP solves mean") > 0);

  CHECK_THROWS_AS(run_comparison_suite(spec_of(ExperimentKind::kLevelGrowth,
                                               {{"grid:5", 20}}, 1)),
                  ParameterError);
}

TEST_CASE("level growth stays inside the envelope") {
  ExperimentSpec spec = spec_of(ExperimentKind::kLevelGrowth,
                                {{"complete:1", 2},
                                 {"random-regular:100:3", 15},
                                 {"random-regular:500:3", 15},
                                 {"random-regular:1000:3", 15}},
                                20);
  const ExperimentReport report = run_level_growth(spec);
  CHECK(report.number(0, "max L") <= 1);
  for (std::size_t row = 1; row < 4; ++row) CHECK(report.number(row, "max L") <= 25);
  CHECK(report.summary.contains("median L slope vs log n"));
}

TEST_CASE("spec parsing") {
  const ExperimentSpec spec = parse_experiment_spec(R"({
    "experiment": "ComponentStructure",
    "cases": [{"family": "grid:30", "k": 20}],
    "gammas": [0.93, 0.91], "trials": 5, "seed": 9, "threads": 2})");
  CHECK(spec.kind == ExperimentKind::kComponentStructure);
  CHECK(spec.cases.size() == 1);
  CHECK(spec.cases[0].k == 20);
  CHECK(spec.gammas == std::vector<double>{0.93, 0.91});
  CHECK(spec.seed == 9);
  CHECK(spec.threads == 2);

  try {
    parse_experiment_spec(R"({"experiment": "Scaling", "cases": [)");
    FAIL("truncated spec accepted");
  } catch (const FormatError& e) {
    CHECK(e.position() > 0);
  }
  CHECK_THROWS_AS(parse_experiment_spec(R"({"experiment": "Scaling", "cases": [],
                                           "trials": 3})"),
                  ParameterError);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"experiment": "Bogus",
                                           "cases": [{"family": "petersen", "k": 3}]})"),
                  ParameterError);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"experiment": "ComponentStructure",
                                           "cases": [{"family": "petersen", "k": 3}],
                                           "gammas": [1.5]})"),
                  ParameterError);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"experiment": "Scaling", "trails": 3,
                                           "cases": [{"family": "petersen", "k": 3}]})"),
                  ParameterError);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"experiment": "Scaling",
                                           "cases": [{"family": "petersen"}]})"),
                  FormatError);
}

TEST_CASE("specs round-trip and edge-list cases load") {
  ExperimentSpec spec = spec_of(ExperimentKind::kEffectiveLevels, {{"grid:5", 20}}, 3, 4);
  spec.bases = {0.9, 0.5};
  spec.threads = 2;
  CHECK(parse_experiment_spec(experiment_spec_to_json(spec)) == spec);

  const std::string path = "experiments_test_c5.edges";
  {
    std::ofstream out(path);
    out << "# C5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
  }
  ExperimentSpec file = spec_of(ExperimentKind::kScaling, {{"file:" + path, 3}}, 4);
  const ExperimentReport report = run_comparison_suite(file);
  CHECK(report.number(0, "n") == 5);
  CHECK(report.number(0, "Delta") == 2);
  std::remove(path.c_str());
  CHECK_THROWS_AS(run_comparison_suite(file), ParameterError);
}

TEST_CASE("report serialization") {
  ExperimentSpec spec = spec_of(ExperimentKind::kLevelGrowth,
                                {{"petersen", 7}, {"grid:5", 15}}, 4);
  const ExperimentReport report = run_level_growth(spec);
  const std::string json = report_to_json(report);
  CHECK(nlohmann::json::parse(json).dump(2) + "\n" == json);
  const auto doc = nlohmann::json::parse(json);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["experiment"] == "LevelGrowth");
  CHECK(doc["metadata"]["seed"] == 1);
  CHECK(doc["metadata"]["spec"]["cases"].size() == 2);
  CHECK(doc["rows"].size() == 2);
  CHECK(doc["trials"].size() == 8);

  const std::string csv = report_to_csv(report);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.starts_with("Graph,n,Delta,k,median L,max L,median L_eff\npetersen,10,3,7,"));
}

}  // namespace
}  // namespace softprs
