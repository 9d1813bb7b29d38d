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
#include "softprs/coloring_record.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

#include "json.hpp"
#include "softprs/errors.h"

namespace softprs {
namespace {

using Json = nlohmann::json;

const std::set<std::string> kAlgorithms = {"iterative", "recursive", "hybrid"};
const std::set<std::string> kSolvers = {"none", "nrs", "huber"};

// (name, member) pairs drive both directions of the stats mapping.
constexpr std::pair<const char*, std::int64_t RecordStats::*> kStatFields[] = {
    {"levels_visited", &RecordStats::levels_visited},
    {"effective_levels", &RecordStats::effective_levels},
    {"skipped_levels", &RecordStats::skipped_levels},
    {"resample_events", &RecordStats::resample_events},
    {"vertex_resamples", &RecordStats::vertex_resamples},
    {"nested_resample_events", &RecordStats::nested_resample_events},
    {"nrs_trials", &RecordStats::nrs_trials},
    {"cftp_solves", &RecordStats::cftp_solves},
    {"cftp_fallbacks", &RecordStats::cftp_fallbacks},
};

// Skips one JSON value starting at `i` in well-formed text; returns the
// offset just past it.
std::size_t skip_value(std::string_view text, std::size_t i) {
  int depth = 0;
  bool in_string = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
        if (depth == 0) return i + 1;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{' || c == '[') {
      ++depth;
    } else if (c == '}' || c == ']') {
      if (depth == 0) return i;
      if (--depth == 0) return i + 1;
    } else if (depth == 0 && (c == ',' || c == ' ' || c == '\n' || c == '\t' ||
                              c == '\r')) {
      return i;
    }
  }
  return i;
}

std::size_t skip_space(std::string_view text, std::size_t i) {
  while (i < text.size() && (text[i] == ' ' || text[i] == '\n' ||
                             text[i] == '\t' || text[i] == '\r')) {
    ++i;
  }
  return i;
}

// 1-based offset of the value under `path` (object keys, or array indices
// written as decimal strings), or of the deepest prefix found. The text must
// already parse.
std::size_t locate(std::string_view text, std::initializer_list<std::string> path) {
  std::size_t at = skip_space(text, 0);
  for (const std::string& step : path) {
    if (at >= text.size()) break;
    if (text[at] == '{') {
      std::size_t i = skip_space(text, at + 1);
      std::optional<std::size_t> found;
      while (i < text.size() && text[i] == '"') {
        const std::size_t key_end = skip_value(text, i);
        const Json key = Json::parse(text.substr(i, key_end - i));
        const std::size_t value = skip_space(text, skip_space(text, key_end) + 1);
        if (key == step) {
          found = value;
          break;
        }
        i = skip_space(text, skip_value(text, value));
        if (i < text.size() && text[i] == ',') i = skip_space(text, i + 1);
      }
      if (!found) break;
      at = *found;
    } else if (text[at] == '[') {
      std::size_t index = std::stoul(step);
      std::size_t i = skip_space(text, at + 1);
      while (index > 0 && i < text.size() && text[i] != ']') {
        i = skip_space(text, skip_value(text, i));
        if (i < text.size() && text[i] == ',') i = skip_space(text, i + 1);
        --index;
      }
      if (index > 0 || i >= text.size() || text[i] == ']') break;
      at = i;
    } else {
      break;
    }
  }
  return at + 1;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& what,
                         std::initializer_list<std::string> path) const {
    throw FormatError("coloring record: " + what, locate(text_, path));
  }

  void expect_keys(const Json& object, const std::set<std::string>& keys,
                   std::initializer_list<std::string> path) const {
    if (!object.is_object()) fail("expected an object", path);
    for (const auto& [key, value] : object.items()) {
      if (!keys.contains(key)) fail("unexpected key '" + key + "'", path);
    }
    for (const auto& key : keys) {
      if (!object.contains(key)) fail("missing key '" + key + "'", path);
    }
  }

  std::int64_t integer(const Json& value, std::int64_t lo, std::int64_t hi,
                       std::initializer_list<std::string> path) const {
    if (!value.is_number_integer()) fail("expected an integer", path);
    if (value.is_number_unsigned() &&
        value.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) {
      fail("integer out of range", path);
    }
    const auto v = value.get<std::int64_t>();
    if (v < lo || v > hi) fail("integer out of range", path);
    return v;
  }

  std::uint64_t unsigned_integer(const Json& value,
                                 std::initializer_list<std::string> path) const {
    if (!value.is_number_unsigned()) fail("expected a non-negative integer", path);
    return value.get<std::uint64_t>();
  }

  std::string string(const Json& value, std::initializer_list<std::string> path) const {
    if (!value.is_string()) fail("expected a string", path);
    return value.get<std::string>();
  }

 private:
  std::string_view text_;
};

constexpr std::int64_t kIntMax = std::numeric_limits<int>::max();
constexpr std::int64_t kInt64Max = std::numeric_limits<std::int64_t>::max();

}  // namespace

RecordStats RecordStats::from(const RunStats& stats) {
  return {stats.levels_visited,  stats.effective_levels, stats.skipped_levels,
          stats.resample_events, stats.vertex_resamples,
          stats.nested_resample_events, stats.nrs_trials, stats.cftp_solves,
          stats.cftp_fallbacks};
}

void validate(const ColoringRecord& record) {
  if (record.k < 1) throw ParameterError("record k must be at least 1");
  if (record.n < 0 || record.colors.size() != static_cast<std::size_t>(record.n)) {
    throw ParameterError("record has " + std::to_string(record.colors.size()) +
                         " colors for n=" + std::to_string(record.n));
  }
  for (Color c : record.colors) {
    if (c < 1 || c > record.k) {
      throw ParameterError("record color " + std::to_string(c) + " outside [1, " +
                           std::to_string(record.k) + "]");
    }
  }
  if (!kAlgorithms.contains(record.algorithm.name)) {
    throw ParameterError("unknown algorithm '" + record.algorithm.name + "'");
  }
  if (!(record.algorithm.gamma_base > 0.0 && record.algorithm.gamma_base < 1.0)) {
    throw ParameterError("record gamma_base outside (0, 1)");
  }
  if (!kSolvers.contains(record.algorithm.solver)) {
    throw ParameterError("unknown solver '" + record.algorithm.solver + "'");
  }
}

std::string serialize(const ColoringRecord& record) {
  validate(record);
  Json stats = Json::object();
  for (const auto& [name, member] : kStatFields) stats[name] = record.stats.*member;
  const Json doc = {
      {"schema_version", kRecordSchemaVersion},
      {"n", record.n},
      {"k", record.k},
      {"colors", record.colors},
      {"graph", record.graph},
      {"graph_seed", record.graph_seed},
      {"seed", record.seed},
      {"algorithm",
       {{"name", record.algorithm.name},
        {"solver", record.algorithm.solver},
        {"gamma_base", record.algorithm.gamma_base},
        {"depth", record.algorithm.depth},
        {"threads", record.algorithm.threads}}},
      {"stats", std::move(stats)},
  };
  return doc.dump(2) + "\n";
}

ColoringRecord deserialize(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("coloring record: ") + e.what(),
                      std::max<std::size_t>(e.byte, 1));
  }
  const Reader in(text);
  in.expect_keys(doc,
                 {"schema_version", "n", "k", "colors", "graph", "graph_seed",
                  "seed", "algorithm", "stats"},
                 {});
  if (in.integer(doc["schema_version"], 0, kIntMax, {"schema_version"}) !=
      kRecordSchemaVersion) {
    in.fail("unsupported schema_version", {"schema_version"});
  }
  ColoringRecord record;
  record.n = in.integer(doc["n"], 0, kInt64Max, {"n"});
  record.k = static_cast<std::int32_t>(in.integer(doc["k"], 1, kIntMax, {"k"}));
  const Json& colors = doc["colors"];
  if (!colors.is_array()) in.fail("colors must be an array", {"colors"});
  if (colors.size() != static_cast<std::size_t>(record.n)) {
    in.fail("colors has " + std::to_string(colors.size()) + " entries for n=" +
                std::to_string(record.n),
            {"colors"});
  }
  record.colors.reserve(colors.size());
  for (std::size_t i = 0; i < colors.size(); ++i) {
    record.colors.push_back(static_cast<Color>(
        in.integer(colors[i], 1, record.k, {"colors", std::to_string(i)})));
  }
  record.graph = in.string(doc["graph"], {"graph"});
  record.graph_seed = in.unsigned_integer(doc["graph_seed"], {"graph_seed"});
  record.seed = in.unsigned_integer(doc["seed"], {"seed"});

  const Json& algorithm = doc["algorithm"];
  in.expect_keys(algorithm, {"name", "solver", "gamma_base", "depth", "threads"},
                 {"algorithm"});
  record.algorithm.name = in.string(algorithm["name"], {"algorithm", "name"});
  if (!kAlgorithms.contains(record.algorithm.name)) {
    in.fail("unknown algorithm", {"algorithm", "name"});
  }
  record.algorithm.solver = in.string(algorithm["solver"], {"algorithm", "solver"});
  if (!kSolvers.contains(record.algorithm.solver)) {
    in.fail("unknown solver", {"algorithm", "solver"});
  }
  if (!algorithm["gamma_base"].is_number()) {
    in.fail("gamma_base must be a number", {"algorithm", "gamma_base"});
  }
  record.algorithm.gamma_base = algorithm["gamma_base"].get<double>();
  if (!(record.algorithm.gamma_base > 0.0 && record.algorithm.gamma_base < 1.0)) {
    in.fail("gamma_base outside (0, 1)", {"algorithm", "gamma_base"});
  }
  record.algorithm.depth =
      static_cast<int>(in.integer(algorithm["depth"], 0, kIntMax, {"algorithm", "depth"}));
  record.algorithm.threads = static_cast<int>(
      in.integer(algorithm["threads"], 1, kIntMax, {"algorithm", "threads"}));

  const Json& stats = doc["stats"];
  std::set<std::string> stat_names;
  for (const auto& [name, member] : kStatFields) stat_names.insert(name);
  in.expect_keys(stats, stat_names, {"stats"});
  for (const auto& [name, member] : kStatFields) {
    record.stats.*member = in.integer(stats[name], 0, kInt64Max, {"stats", name});
  }
  return record;
}

}  // namespace softprs
