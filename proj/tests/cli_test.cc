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
// Drives the softprs executable end to end and checks outputs and exit codes.

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "softprs/coloring_record.h"
#include "softprs/graph.h"
#include "softprs/soft_state.h"

namespace softprs {
namespace {

using Json = nlohmann::json;

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string command =
      env + " " + SOFTPRS_CLI + " " + args + " 2>cli_test_stderr.txt";
  Run result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

bool round_trips(const std::string& text) {
  return Json::parse(text).dump(2) + "\n" == text;
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

TEST_CASE("sample emits a deterministic proper coloring") {
  const Run a = run("sample --family cycle:10 --k 5 --algo iterative --seed 7");
  REQUIRE(a.status == 0);
  const ColoringRecord record = deserialize(a.out);
  CHECK(serialize(record) == a.out);
  CHECK(round_trips(a.out));
  CHECK(record.n == 10);
  CHECK(record.seed == 7);
  CHECK(record.algorithm.name == "iterative");
  SoftState state;
  state.colors = record.colors;
  CHECK(is_proper(state, generate(CycleFamily{10})));
  CHECK(run("sample --family cycle:10 --k 5 --algo iterative --seed 7").out == a.out);
  CHECK(run("sample --family cycle:10 --k 5 --algo iterative --seed 8").out != a.out);
}

TEST_CASE("sample output does not depend on the thread count") {
  const std::string args = "sample --family grid:10 --k 20 --algo hybrid --solver nrs --seed 1";
  const Run four = run(args + " --threads 4");
  const Run one = run(args + " --threads 1");
  REQUIRE(four.status == 0);
  REQUIRE(one.status == 0);
  CHECK(deserialize(four.out).colors == deserialize(one.out).colors);
  CHECK(deserialize(four.out).stats == deserialize(one.out).stats);
  CHECK(deserialize(four.out).algorithm.threads == 4);
}

TEST_CASE("default seed and threads are echoed") {
  const Run text = run("sample --family petersen --k 5 --format text");
  REQUIRE(text.status == 0);
  CHECK(contains(text.out, "seed=1"));
  CHECK(contains(text.out, "threads=1"));
  const Run env = run("sample --family petersen --k 5 --algo hybrid --format text",
                      "SOFTPRS_THREADS=3");
  CHECK(contains(env.out, "threads=3"));
  const Run json = run("sample --family petersen --k 5");
  CHECK(deserialize(json.out).seed == 1);
  CHECK(deserialize(json.out).graph_seed == derive_graph_seed(1));
}

TEST_CASE("exit codes") {
  CHECK(run("sample --family complete:5 --k 4").status == 3);
  CHECK(run("sample --family cycle:5 --k 3 --algo hybrid --solver bc20").status == 2);
  CHECK(run("sample --family hexagon:5 --k 3").status == 2);
  CHECK(run("sample --family cycle:5").status == 2);
  CHECK(run("sample --k 3").status == 2);
  CHECK(run("sample --family cycle:5 --graph x.edges --k 3").status == 2);
  CHECK(run("sample --family cycle:5 --k 3", "SOFTPRS_THREADS=zero").status == 2);
  CHECK(run("sample --family cycle:5 --k 3 --gamma-base 1.5").status == 2);
  CHECK(run("sample --family cycle:5 --k 3 --solver nrs").status == 2);
  CHECK(run("sample --family cycle:5 --k 3 --max-levels 1 --seed 2").status == 3);
  CHECK(run("verify --family grid:5 --k 20 --runs 100").status == 4);
  CHECK(run("bench --spec no-such-spec.json").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("--help").status == 0);
}

TEST_CASE("analyze prints the closed forms") {
  const Run four = run("analyze --delta 4 --k 20 --gamma-base 0.9");
  REQUIRE(four.status == 0);
  CHECK(contains(four.out, "gamma_critical    0.904\n"));
  CHECK(contains(four.out, "effective_levels  0\n"));
  CHECK(contains(run("analyze --delta 3").out, "k_sufficient      7.6\n"));

  const Run two = run("analyze --delta 2 --k 5");
  REQUIRE(two.status == 0);
  CHECK(contains(two.out, "gamma_critical    undefined for \xce\x94<3"));
  CHECK(contains(two.out, "p_bad"));

  const Run json = run("analyze --delta 5 --k 12 --format json");
  REQUIRE(json.status == 0);
  CHECK(round_trips(json.out));
  CHECK(Json::parse(json.out)["constants"]["gamma_critical"].get<double>() ==
        doctest::Approx(0.944).epsilon(5e-4));
}

TEST_CASE("verify runs the chi-square battery") {
  const Run text = run("verify --family cycle:4 --k 3 --runs 30000 --seed 3");
  CHECK(text.status == 0);
  CHECK(contains(text.out, "verdict: not rejected"));
  const Run json = run("verify --family cycle:4 --k 3 --runs 2000 --algo hybrid "
                       "--solver nrs --format json");
  CHECK(json.status == 0);
  CHECK(round_trips(json.out));
  CHECK(Json::parse(json.out)["chi_square"]["degrees_of_freedom"] == 17);
}

TEST_CASE("components gives a component-structure row") {
  const Run text = run("components --family random-regular:1000:3 --k 15 --gamma 0.93 "
                       "--trials 100");
  REQUIRE(text.status == 0);
  CHECK(contains(text.out, "avg |Bad|"));
  CHECK(contains(text.out, "\"seed\":1"));
  const Run json = run("components --family grid:30 --k 20 --gamma 0.93,0.91 --trials 5 "
                       "--format json");
  REQUIRE(json.status == 0);
  CHECK(round_trips(json.out));
  const Json doc = Json::parse(json.out);
  CHECK(doc["rows"].size() == 2);
  CHECK(doc["metadata"]["timestamp"].get<std::string>().size() == 20);
}

TEST_CASE("bench writes report headers") {
  const Run comparison = run(std::string("bench --spec ") + SOFTPRS_SOURCE_DIR +
                             "/bench/hybrid_comparison.json");
  REQUIRE(comparison.status == 0);
  CHECK(comparison.out.starts_with(
      "Graph,n,Delta,k,PRS Levels,PRS Resamp.,Hybrid-NRS Levels,Hybrid-NRS Resamp.\n"));
  const Run json = run(std::string("bench --spec ") + SOFTPRS_SOURCE_DIR +
                       "/bench/cftp_low_k.json --format json --threads 2");
  REQUIRE(json.status == 0);
  CHECK(round_trips(json.out));
  CHECK(Json::parse(json.out)["metadata"]["spec"]["threads"] == 2);
}

TEST_CASE("edge lists and output files") {
  {
    std::ofstream out("cli_test_triangle.edges");
    out << "# triangle\n0 1\n1 2\n2 0\n";
  }
  const Run csv = run("sample --graph cli_test_triangle.edges --k 3 --format csv");
  REQUIRE(csv.status == 0);
  CHECK(csv.out.starts_with("vertex,color\n"));
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 4);

  REQUIRE(run("sample --graph cli_test_triangle.edges --k 4 --seed 5 -o cli_test_out.json")
              .status == 0);
  std::ifstream in("cli_test_out.json");
  std::stringstream text;
  text << in.rdbuf();
  const ColoringRecord record = deserialize(text.str());
  CHECK(record.graph == "file:cli_test_triangle.edges");
  CHECK(record.k == 4);

  {
    std::ofstream out("cli_test_bad.edges");
    out << "0 1\n1 x\n";
  }
  CHECK(run("sample --graph cli_test_bad.edges --k 3").status == 2);
  std::remove("cli_test_triangle.edges");
  std::remove("cli_test_bad.edges");
  std::remove("cli_test_out.json");
}

}  // namespace
}  // namespace softprs
