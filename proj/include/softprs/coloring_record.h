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
#ifndef SOFTPRS_COLORING_RECORD_H_
#define SOFTPRS_COLORING_RECORD_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "softprs/prs.h"
#include "softprs/soft_state.h"

namespace softprs {

inline constexpr int kRecordSchemaVersion = 1;

struct AlgorithmDescriptor {
  // "iterative", "recursive" or "hybrid".
  std::string name;
  // "nrs" or "huber" for the hybrid, "none" otherwise.
  std::string solver = "none";
  double gamma_base = 0.9;
  int depth = 0;
  int threads = 1;

  bool operator==(const AlgorithmDescriptor&) const = default;
};

// RunStats without the per-sweep trace.
struct RecordStats {
  std::int64_t levels_visited = 0;
  std::int64_t effective_levels = 0;
  std::int64_t skipped_levels = 0;
  std::int64_t resample_events = 0;
  std::int64_t vertex_resamples = 0;
  std::int64_t nested_resample_events = 0;
  std::int64_t nrs_trials = 0;
  std::int64_t cftp_solves = 0;
  std::int64_t cftp_fallbacks = 0;

  static RecordStats from(const RunStats& stats);
  bool operator==(const RecordStats&) const = default;
};

// One sampler output with everything needed to reproduce it.
struct ColoringRecord {
  std::int64_t n = 0;
  std::int32_t k = 0;
  // 1-based colors, one per vertex.
  std::vector<Color> colors;
  // Family spec ("grid:10") or "file:<path>" for an edge list.
  std::string graph;
  std::uint64_t graph_seed = 0;
  std::uint64_t seed = 0;
  AlgorithmDescriptor algorithm;
  RecordStats stats;

  bool operator==(const ColoringRecord&) const = default;
};

// Throws ParameterError if colors.size() != n or a color is outside [1, k].
void validate(const ColoringRecord& record);

// Canonical JSON: sorted keys, two-space indent, trailing newline, with
// "schema_version". Validates first.
std::string serialize(const ColoringRecord& record);

// Inverse of serialize. Throws FormatError on malformed or invalid input;
// position() is the 1-based byte offset of the offending token.
ColoringRecord deserialize(std::string_view json);

}  // namespace softprs

#endif  // SOFTPRS_COLORING_RECORD_H_
