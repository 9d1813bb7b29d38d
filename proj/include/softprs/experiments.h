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

#ifndef SOFTPRS_EXPERIMENTS_H_
#define SOFTPRS_EXPERIMENTS_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace softprs {

enum class ExperimentKind {
  kComponentStructure,
  kEffectiveLevels,
  kSmallGraphs,
  kScaling,
  kHybridComparison,
  kCftpComparison,
  kLevelGrowth,
};

// Names as they appear in spec files: "ComponentStructure", ...
std::string_view kind_name(ExperimentKind kind);
ExperimentKind parse_kind(std::string_view name);

struct ExperimentCase {
  // Family mini-grammar, e.g. "grid:10" or "random-regular:1000:3", or
  // "file:<path>" for an edge list.
  std::string family;
  std::int32_t k = 0;

  bool operator==(const ExperimentCase&) const = default;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kComponentStructure;
  std::vector<ExperimentCase> cases;
  // Component structure only.
  std::vector<double> gammas;
  // Schedule bases; effective levels runs each, the other kinds use the
  // first (0.9 if empty).
  std::vector<double> bases;
  int trials = 20;
  std::uint64_t seed = 1;
  int threads = 1;

  bool operator==(const ExperimentSpec&) const = default;
};

// Throws ParameterError on an invalid spec (no cases, trials < 1, gamma
// outside (0, 1], base outside (0, 1), threads < 1, missing bases for
// effective levels).
void validate(const ExperimentSpec& spec);

// JSON object with keys "experiment", "cases": [{"family", "k"}], "gammas",
// "bases", "trials", "seed", "threads". Throws FormatError with the byte
// offset on malformed input and ParameterError on invalid values.
ExperimentSpec parse_experiment_spec(std::string_view json);
// Inverse of parse_experiment_spec, in the same canonical layout as reports.
std::string experiment_spec_to_json(const ExperimentSpec& spec);

using ReportCell = std::variant<std::int64_t, double, std::string>;

// Raw measurement of one (row, trial) cell. `seed` is the master seed the
// trial ran under; the graph came from the row's case.
struct TrialRecord {
  std::size_t row = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> values;

  bool operator==(const TrialRecord&) const = default;
};

struct ExperimentReport {
  // The experiment spec that produced the report, echoed into the JSON output.
  ExperimentSpec spec;
  std::string build;
  // Left empty by the runners so reports compare equal across reruns.
  std::string timestamp;
  std::vector<std::string> columns;
  std::vector<std::vector<ReportCell>> rows;
  std::vector<TrialRecord> trials;
  // Whole-report figures such as fitted slopes.
  std::map<std::string, double> summary;

  bool operator==(const ExperimentReport&) const = default;

  // Column index by name; throws std::out_of_range when absent.
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view column_name) const;
};

// Fresh rho samples per (case, gamma): |Bad|, |R|, component counts and
// sizes. No sampler iteration.
ExperimentReport run_component_structure(const ExperimentSpec& spec);

// L_eff and skipped levels of the iterative sampler per (case, base).
ExperimentReport run_effective_levels(const ExperimentSpec& spec);

// SmallGraphs, Scaling, HybridComparison or CftpComparison, by spec kind.
ExperimentReport run_comparison_suite(const ExperimentSpec& spec);

// Levels to termination of the hybrid sampler (bounding-chain solver) vs n;
// plain iteration is impractical past a few hundred vertices. The summary
// holds the least-squares slope of median L against log n.
ExperimentReport run_level_growth(const ExperimentSpec& spec);

// Dispatches on spec.kind.
ExperimentReport run_experiment(const ExperimentSpec& spec);

// Nested JSON (metadata, columns, rows, raw trials, summary); two-space
// indent, sorted keys.
std::string report_to_json(const ExperimentReport& report);
// One header line, then one line per row.
std::string report_to_csv(const ExperimentReport& report);

// Median of the values; the mean of the middle pair for even sizes.
double median(std::vector<double> values);
// Nearest-rank percentile, p in (0, 100].
double percentile(std::vector<double> values, double p);
// Ordinary least-squares slope of y on x.
double least_squares_slope(const std::vector<double>& x,
                           const std::vector<double>& y);

}  // namespace softprs

#endif  // SOFTPRS_EXPERIMENTS_H_
