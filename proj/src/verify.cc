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

#include "softprs/verify.h"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "softprs/errors.h"

namespace softprs {
namespace {

void require_runs(std::int64_t runs, std::size_t cells) {
  if (runs < 20 * static_cast<std::int64_t>(cells)) {
    throw ParameterError("need at least 20 runs per outcome (" +
                         std::to_string(20 * cells) + "), got " +
                         std::to_string(runs));
  }
}

ChiSquareReport finish(double statistic, int dof, std::int64_t n) {
  ChiSquareReport report;
  report.statistic = statistic;
  report.degrees_of_freedom = dof;
  report.sample_size = n;
  report.p_value = chi_square_p_value(statistic, dof);
  report.rejected_at_1pct = report.p_value < kSignificance;
  return report;
}

}  // namespace

std::uint64_t coloring_code(std::span<const Color> colors, std::int32_t k) {
  std::uint64_t code = 0;
  for (std::size_t i = colors.size(); i-- > 0;) {
    code = code * static_cast<std::uint64_t>(k) +
           static_cast<std::uint64_t>(colors[i] - 1);
  }
  return code;
}

std::vector<Color> decode_coloring(std::uint64_t code, std::size_t n,
                                   std::int32_t k) {
  std::vector<Color> colors(n);
  for (std::size_t i = 0; i < n; ++i) {
    colors[i] = static_cast<Color>(code % static_cast<std::uint64_t>(k)) + 1;
    code /= static_cast<std::uint64_t>(k);
  }
  return colors;
}

std::optional<std::size_t> EnumerationResult::index_of(
    std::span<const Color> colors) const {
  if (colors.size() != vertex_count) return std::nullopt;
  for (Color c : colors) {
    if (c < 1 || c > k) return std::nullopt;
  }
  const std::uint64_t code = coloring_code(colors, k);
  auto it = std::lower_bound(codes.begin(), codes.end(), code);
  if (it == codes.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - codes.begin());
}

std::vector<Color> EnumerationResult::coloring(std::size_t index) const {
  return decode_coloring(codes.at(index), vertex_count, k);
}

EnumerationResult enumerate_proper(const Graph& graph, std::int32_t k) {
  if (k < 1) throw ParameterError("k must be at least 1");
  const std::size_t n = graph.vertex_count();
  if (static_cast<double>(n) * std::log(static_cast<double>(k)) >
      std::log(kEnumerationLimit) + 1e-9) {
    throw CapacityError("enumeration of " + std::to_string(k) + "^" +
                        std::to_string(n) + " colorings exceeds the limit");
  }
  EnumerationResult result;
  result.vertex_count = n;
  result.k = k;
  if (n == 0) {
    result.codes.push_back(0);
    return result;
  }
  std::vector<Color> colors(n, 0);
  std::vector<std::uint64_t> weight(n, 1);
  for (std::size_t i = 1; i < n; ++i) weight[i] = weight[i - 1] * k;

  auto fits = [&](std::size_t v) {
    for (Vertex w : graph.neighbors(static_cast<Vertex>(v))) {
      if (static_cast<std::size_t>(w) < v && colors[w] == colors[v]) return false;
    }
    return true;
  };
  // Iterative depth-first search over vertices 0..n-1.
  std::size_t v = 0;
  while (true) {
    ++colors[v];
    if (colors[v] > k) {
      colors[v] = 0;
      if (v == 0) break;
      --v;
      continue;
    }
    if (!fits(v)) continue;
    if (v + 1 == n) {
      result.codes.push_back(coloring_code(colors, k));
    } else {
      ++v;
    }
  }
  std::sort(result.codes.begin(), result.codes.end());
  return result;
}

SoftState eta_gamma_oracle(const Graph& graph, std::int32_t k, double gamma,
                           RandomStream& rng, std::int64_t max_rejections) {
  const GammaLevel level(graph, gamma);
  for (std::int64_t attempt = 0; attempt <= max_rejections; ++attempt) {
    SoftState x = sample_reference(graph, k, rng);
    if (!level.any_bad(x)) return x;
  }
  throw CapacityError("rejection budget of " + std::to_string(max_rejections) +
                      " exhausted drawing from the gamma-soft law");
}

NaiveRejectionResult naive_rejection_sample(const Graph& graph, std::int32_t k,
                                            RandomStream& rng,
                                            std::int64_t max_iterations) {
  if (k < 1) throw ParameterError("k must be at least 1");
  NaiveRejectionResult result;
  result.coloring.resize(graph.vertex_count());
  while (result.iterations < max_iterations) {
    ++result.iterations;
    for (Color& c : result.coloring) c = rng.color(k);
    if (is_proper(result.coloring, graph)) return result;
  }
  throw CapacityError("naive rejection gave up after " +
                      std::to_string(max_iterations) + " draws");
}

double chi_square_p_value(double statistic, int degrees_of_freedom) {
  if (degrees_of_freedom <= 0) return 1.0;
  if (statistic <= 0) return 1.0;
  return boost::math::gamma_q(degrees_of_freedom / 2.0, statistic / 2.0);
}

ChiSquareReport chi_square_goodness(std::span<const std::int64_t> observed,
                                    std::span<const double> probabilities) {
  if (observed.size() != probabilities.size()) {
    throw ParameterError("observed and probability cells differ in number");
  }
  std::int64_t n = 0;
  for (auto c : observed) n += c;
  double statistic = 0;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (probabilities[i] <= 0) {
      if (observed[i] != 0) {
        // An impossible outcome occurred.
        return finish(std::numeric_limits<double>::infinity(),
                      std::max(1, static_cast<int>(observed.size()) - 1), n);
      }
      continue;
    }
    ++cells;
    const double expected = probabilities[i] * static_cast<double>(n);
    const double diff = static_cast<double>(observed[i]) - expected;
    statistic += diff * diff / expected;
  }
  return finish(statistic, cells - 1, n);
}

ChiSquareReport chi_square_uniform(std::span<const std::int64_t> observed) {
  const std::vector<double> p(observed.size(), 1.0 / static_cast<double>(observed.size()));
  return chi_square_goodness(observed, p);
}

ChiSquareReport chi_square_two_sample(std::span<const std::int64_t> a,
                                      std::span<const std::int64_t> b) {
  if (a.size() != b.size()) throw ParameterError("histograms differ in size");
  double na = 0, nb = 0;
  for (auto c : a) na += static_cast<double>(c);
  for (auto c : b) nb += static_cast<double>(c);
  if (na == 0 || nb == 0) throw ParameterError("empty histogram");
  const double ka = std::sqrt(nb / na);
  const double kb = std::sqrt(na / nb);
  double statistic = 0;
  int cells = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double total = static_cast<double>(a[i] + b[i]);
    if (total == 0) continue;
    ++cells;
    const double diff = ka * static_cast<double>(a[i]) - kb * static_cast<double>(b[i]);
    statistic += diff * diff / total;
  }
  return finish(statistic, cells - 1, static_cast<std::int64_t>(na + nb));
}

std::vector<std::int64_t> outcome_counts(const ColoringSampler& sampler,
                                         const EnumerationResult& outcomes,
                                         std::int64_t runs,
                                         const RandomStream& rng) {
  std::vector<std::int64_t> counts(outcomes.total_proper(), 0);
  for (std::int64_t i = 0; i < runs; ++i) {
    const std::vector<Color> colors =
        sampler(rng.child(StreamLabel::kRun, static_cast<std::uint64_t>(i)));
    const auto index = outcomes.index_of(colors);
    if (!index) throw std::logic_error("sampler returned a non-proper coloring");
    ++counts[*index];
  }
  return counts;
}

ChiSquareReport uniformity_test(const ColoringSampler& sampler,
                                const Graph& graph, std::int32_t k,
                                std::int64_t runs, const RandomStream& rng) {
  const EnumerationResult outcomes = enumerate_proper(graph, k);
  if (outcomes.total_proper() == 0) throw ParameterError("no proper coloring exists");
  require_runs(runs, outcomes.total_proper());
  const auto counts = outcome_counts(sampler, outcomes, runs, rng);
  return chi_square_uniform(counts);
}

ChiSquareReport two_sample_test(const ColoringSampler& a,
                                const ColoringSampler& b, const Graph& graph,
                                std::int32_t k, std::int64_t runs,
                                const RandomStream& rng) {
  const EnumerationResult outcomes = enumerate_proper(graph, k);
  if (outcomes.total_proper() == 0) throw ParameterError("no proper coloring exists");
  require_runs(runs, outcomes.total_proper());
  const auto ca = outcome_counts(a, outcomes, runs, rng.child(StreamLabel::kSampler, 0));
  const auto cb = outcome_counts(b, outcomes, runs, rng.child(StreamLabel::kSampler, 1));
  return chi_square_two_sample(ca, cb);
}

ChiSquareReport marginal_pair_test(const ColoringSampler& sampler,
                                   const Graph& graph, std::int32_t k,
                                   Vertex v, Vertex w, std::int64_t runs,
                                   const RandomStream& rng) {
  const auto n = static_cast<Vertex>(graph.vertex_count());
  if (v < 0 || w < 0 || v >= n || w >= n || v == w) {
    throw ParameterError("marginal pair must be two distinct vertices");
  }
  const EnumerationResult outcomes = enumerate_proper(graph, k);
  if (outcomes.total_proper() == 0) throw ParameterError("no proper coloring exists");
  const auto cells = static_cast<std::size_t>(k) * static_cast<std::size_t>(k);
  require_runs(runs, cells);
  auto cell = [k](Color a, Color b) {
    return static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(k) +
           static_cast<std::size_t>(b - 1);
  };
  std::vector<double> exact(cells, 0.0);
  for (std::size_t i = 0; i < outcomes.total_proper(); ++i) {
    const auto colors = outcomes.coloring(i);
    exact[cell(colors[v], colors[w])] += 1.0;
  }
  for (double& p : exact) p /= static_cast<double>(outcomes.total_proper());

  std::vector<std::int64_t> counts(cells, 0);
  for (std::int64_t i = 0; i < runs; ++i) {
    const std::vector<Color> colors =
        sampler(rng.child(StreamLabel::kRun, static_cast<std::uint64_t>(i)));
    if (!is_proper(colors, graph)) {
      throw std::logic_error("sampler returned a non-proper coloring");
    }
    ++counts[cell(colors[v], colors[w])];
  }
  return chi_square_goodness(counts, exact);
}

}  // namespace softprs
