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

#ifndef SOFTPRS_GRAPH_H_
#define SOFTPRS_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace softprs {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

// Immutable simple undirected graph in compressed adjacency form. Neighbor
// lists are sorted; vertices are dense 0-based indices.
class Graph {
 public:
  Graph() = default;

  // Builds a graph on `vertex_count` vertices. Duplicate edges (in either
  // orientation) are merged. Throws ParameterError on self-loops or
  // out-of-range endpoints.
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return adjacency_.size() / 2; }
  int max_degree() const { return max_degree_; }

  int degree(Vertex v) const {
    return static_cast<int>(offsets_[v + 1] - offsets_[v]);
  }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  bool has_edge(Vertex v, Vertex w) const;

  // Each edge once, as (smaller, larger), in lexicographic order.
  std::vector<Edge> edges() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
  int max_degree_ = 0;
};

// Subgraph induced by a vertex subset, with the map back to parent indices.
// Local vertex i corresponds to parent vertex to_parent[i]; to_parent keeps
// the order of the input subset.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;
};

InducedSubgraph induced_subgraph(const Graph& graph,
                                 std::span<const Vertex> vertices);

// Benchmark families.
struct CycleFamily {
  int n;
};
struct GridFamily {
  int m;
};
struct CompleteFamily {
  int n;
};
struct PetersenFamily {};
struct RandomRegularFamily {
  int n;
  int d;
  std::uint64_t seed;
};

using GraphFamily = std::variant<CycleFamily, GridFamily, CompleteFamily,
                                 PetersenFamily, RandomRegularFamily>;

// Vertex orderings: cycle order for C_n, row-major for grids, outer 5-cycle
// then inner pentagram for Petersen. Random regular graphs are uniform over
// simple d-regular graphs (pairing model with restart); the same seed gives
// the same graph.
Graph generate(const GraphFamily& family);

// Parses "cycle:N", "grid:M", "complete:N", "petersen" or
// "random-regular:N:D". Random regular graphs take `seed`.
GraphFamily parse_family(std::string_view text, std::uint64_t seed);

// Seed for graph generation under a run's master seed, kept apart from the
// sampler's streams.
std::uint64_t derive_graph_seed(std::uint64_t master_seed);

// Canonical textual form of a family, e.g. "grid:5" or "random-regular:100:3".
std::string describe(const GraphFamily& family);

// Reads "u v" edge lines (0-based). Lines whose first non-blank character is
// '#' and blank lines are skipped. n = 1 + largest index seen. Throws
// FormatError (position = line number) on self-loops or bad tokens.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_text(std::string_view text);

// Cheap lower bound on the chromatic number: 0 for no vertices, 1 without
// edges, n for complete graphs, 3 if non-bipartite, else 2.
int chromatic_lower_bound(const Graph& graph);

bool is_bipartite(const Graph& graph);

}  // namespace softprs

#endif  // SOFTPRS_GRAPH_H_
