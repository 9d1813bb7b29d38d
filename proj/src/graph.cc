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

#include "softprs/graph.h"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>

#include "softprs/errors.h"
#include "softprs/random_stream.h"

namespace softprs {

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  const auto n = static_cast<std::int64_t>(vertex_count);
  for (const auto& [v, w] : edges) {
    if (v < 0 || w < 0 || v >= n || w >= n) {
      throw ParameterError("edge (" + std::to_string(v) + ", " +
                           std::to_string(w) + ") out of range for " +
                           std::to_string(vertex_count) + " vertices");
    }
    if (v == w) {
      throw ParameterError("self-loop at vertex " + std::to_string(v));
    }
    directed.emplace_back(v, w);
    directed.emplace_back(w, v);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  Graph g;
  g.offsets_.assign(vertex_count + 1, 0);
  for (const auto& e : directed) ++g.offsets_[e.first + 1];
  for (std::size_t v = 0; v < vertex_count; ++v) {
    g.offsets_[v + 1] += g.offsets_[v];
  }
  g.adjacency_.reserve(directed.size());
  for (const auto& e : directed) g.adjacency_.push_back(e.second);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    g.max_degree_ = std::max(g.max_degree_, g.degree(static_cast<Vertex>(v)));
  }
  return g;
}

bool Graph::has_edge(Vertex v, Vertex w) const {
  const auto nbrs = neighbors(v);
  return std::binary_search(nbrs.begin(), nbrs.end(), w);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex v = 0; v < static_cast<Vertex>(vertex_count()); ++v) {
    for (Vertex w : neighbors(v)) {
      if (v < w) out.emplace_back(v, w);
    }
  }
  return out;
}

InducedSubgraph induced_subgraph(const Graph& graph,
                                 std::span<const Vertex> vertices) {
  InducedSubgraph sub;
  sub.to_parent.assign(vertices.begin(), vertices.end());
  std::vector<std::pair<Vertex, Vertex>> index;  // (parent, local), sorted
  index.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    index.emplace_back(vertices[i], static_cast<Vertex>(i));
  }
  std::sort(index.begin(), index.end());
  auto local_of = [&](Vertex parent) -> Vertex {
    auto it = std::lower_bound(index.begin(), index.end(),
                               std::pair<Vertex, Vertex>(parent, -1));
    return (it != index.end() && it->first == parent) ? it->second : -1;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (Vertex w : graph.neighbors(vertices[i])) {
      const Vertex j = local_of(w);
      if (j > static_cast<Vertex>(i)) edges.emplace_back(static_cast<Vertex>(i), j);
    }
  }
  sub.graph = Graph::from_edges(vertices.size(), edges);
  return sub;
}

namespace {

Graph make_random_regular(const RandomRegularFamily& f) {
  if (f.n < 1 || f.d < 0) {
    throw ParameterError("random regular graph needs n >= 1 and d >= 0");
  }
  if (f.d >= f.n) {
    throw ParameterError("random regular graph needs d < n (got n=" +
                         std::to_string(f.n) + ", d=" + std::to_string(f.d) + ")");
  }
  if ((static_cast<std::int64_t>(f.n) * f.d) % 2 != 0) {
    throw ParameterError("random regular graph needs n*d even (got n=" +
                         std::to_string(f.n) + ", d=" + std::to_string(f.d) + ")");
  }
  const std::size_t points = static_cast<std::size_t>(f.n) * f.d;
  const RandomStream root(f.seed);
  std::vector<Vertex> slots(points);
  std::vector<Edge> edges(points / 2);
  constexpr int kMaxAttempts = 1'000'000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    RandomStream rng = root.child(StreamLabel::kGraph, attempt);
    for (std::size_t i = 0; i < points; ++i) {
      slots[i] = static_cast<Vertex>(i / f.d);
    }
    for (std::size_t i = points; i > 1; --i) {
      std::swap(slots[i - 1], slots[rng.below(i)]);
    }
    bool simple = true;
    for (std::size_t i = 0; i < points / 2 && simple; ++i) {
      Vertex a = slots[2 * i];
      Vertex b = slots[2 * i + 1];
      if (a == b) simple = false;
      edges[i] = {std::min(a, b), std::max(a, b)};
    }
    if (!simple) continue;
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    return Graph::from_edges(static_cast<std::size_t>(f.n), sorted);
  }
  throw ParameterError("pairing model did not produce a simple graph");
}

}  // namespace

Graph generate(const GraphFamily& family) {
  struct Visitor {
    Graph operator()(const CycleFamily& f) const {
      if (f.n < 3) throw ParameterError("cycle needs n >= 3");
      std::vector<Edge> edges;
      for (Vertex i = 0; i < f.n; ++i) edges.emplace_back(i, (i + 1) % f.n);
      return Graph::from_edges(static_cast<std::size_t>(f.n), edges);
    }
    Graph operator()(const GridFamily& f) const {
      if (f.m < 2) throw ParameterError("grid needs m >= 2");
      std::vector<Edge> edges;
      for (Vertex i = 0; i < f.m; ++i) {
        for (Vertex j = 0; j < f.m; ++j) {
          const Vertex v = i * f.m + j;
          if (j + 1 < f.m) edges.emplace_back(v, v + 1);
          if (i + 1 < f.m) edges.emplace_back(v, v + f.m);
        }
      }
      return Graph::from_edges(static_cast<std::size_t>(f.m) * f.m, edges);
    }
    Graph operator()(const CompleteFamily& f) const {
      if (f.n < 1) throw ParameterError("complete graph needs n >= 1");
      std::vector<Edge> edges;
      for (Vertex i = 0; i < f.n; ++i) {
        for (Vertex j = i + 1; j < f.n; ++j) edges.emplace_back(i, j);
      }
      return Graph::from_edges(static_cast<std::size_t>(f.n), edges);
    }
    Graph operator()(const PetersenFamily&) const {
      std::vector<Edge> edges;
      for (Vertex i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);          // outer cycle
        edges.emplace_back(i, i + 5);                // spoke
        edges.emplace_back(i + 5, (i + 2) % 5 + 5);  // pentagram
      }
      return Graph::from_edges(10, edges);
    }
    Graph operator()(const RandomRegularFamily& f) const {
      return make_random_regular(f);
    }
  };
  return std::visit(Visitor{}, family);
}

namespace {

int parse_int_field(std::string_view field, std::string_view whole) {
  int value = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParameterError("bad integer '" + std::string(field) +
                         "' in family spec '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

std::uint64_t derive_graph_seed(std::uint64_t master_seed) {
  return RandomStream(master_seed).child(StreamLabel::kGraph, 0).key();
}

GraphFamily parse_family(std::string_view text, std::uint64_t seed) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  const std::string_view name = parts[0];
  auto expect_args = [&](std::size_t count) {
    if (parts.size() != count + 1) {
      throw ParameterError("family '" + std::string(name) + "' takes " +
                           std::to_string(count) + " argument(s): '" +
                           std::string(text) + "'");
    }
  };
  if (name == "cycle") {
    expect_args(1);
    return CycleFamily{parse_int_field(parts[1], text)};
  }
  if (name == "grid") {
    expect_args(1);
    return GridFamily{parse_int_field(parts[1], text)};
  }
  if (name == "complete") {
    expect_args(1);
    return CompleteFamily{parse_int_field(parts[1], text)};
  }
  if (name == "petersen") {
    expect_args(0);
    return PetersenFamily{};
  }
  if (name == "random-regular") {
    expect_args(2);
    return RandomRegularFamily{parse_int_field(parts[1], text),
                               parse_int_field(parts[2], text), seed};
  }
  throw ParameterError("unknown graph family '" + std::string(text) + "'");
}

std::string describe(const GraphFamily& family) {
  struct Visitor {
    std::string operator()(const CycleFamily& f) const {
      return "cycle:" + std::to_string(f.n);
    }
    std::string operator()(const GridFamily& f) const {
      return "grid:" + std::to_string(f.m);
    }
    std::string operator()(const CompleteFamily& f) const {
      return "complete:" + std::to_string(f.n);
    }
    std::string operator()(const PetersenFamily&) const { return "petersen"; }
    std::string operator()(const RandomRegularFamily& f) const {
      return "random-regular:" + std::to_string(f.n) + ":" + std::to_string(f.d);
    }
  };
  return std::visit(Visitor{}, family);
}

Graph load_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::int64_t max_index = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::string a, b, extra;
    tokens >> a >> b;
    if (b.empty() || (tokens >> extra)) {
      throw FormatError("line " + std::to_string(line_no) +
                            ": expected exactly two vertex indices",
                        line_no);
    }
    auto parse = [&](const std::string& tok) {
      Vertex value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 0) {
        throw FormatError("line " + std::to_string(line_no) +
                              ": not a vertex index: '" + tok + "'",
                          line_no);
      }
      return value;
    };
    const Vertex v = parse(a);
    const Vertex w = parse(b);
    if (v == w) {
      throw FormatError("line " + std::to_string(line_no) + ": self-loop at " + a,
                        line_no);
    }
    edges.emplace_back(v, w);
    max_index = std::max<std::int64_t>(max_index, std::max(v, w));
  }
  return Graph::from_edges(static_cast<std::size_t>(max_index + 1), edges);
}

Graph load_edge_list_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_edge_list(in);
}

bool is_bipartite(const Graph& graph) {
  const auto n = static_cast<Vertex>(graph.vertex_count());
  std::vector<int> side(n, -1);
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : graph.neighbors(v)) {
        if (side[w] == -1) {
          side[w] = 1 - side[v];
          queue.push_back(w);
        } else if (side[w] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

int chromatic_lower_bound(const Graph& graph) {
  const std::size_t n = graph.vertex_count();
  if (n == 0) return 0;
  if (graph.edge_count() == 0) return 1;
  if (graph.edge_count() == n * (n - 1) / 2) return static_cast<int>(n);
  return is_bipartite(graph) ? 2 : 3;
}

}  // namespace softprs
