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

#ifndef SOFTPRS_VERIFY_H_
#define SOFTPRS_VERIFY_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "softprs/graph.h"
#include "softprs/random_stream.h"
#include "softprs/soft_state.h"

namespace softprs {

// Largest k^n the enumerator will search.
inline constexpr double kEnumerationLimit = 1e8;
inline constexpr std::int64_t kOracleRejectionLimit = 10'000'000;
inline constexpr double kSignificance = 0.01;

// Base-k code of a color vector; vertex 0 is the least significant digit.
std::uint64_t coloring_code(std::span<const Color> colors, std::int32_t k);
std::vector<Color> decode_coloring(std::uint64_t code, std::size_t n,
                                   std::int32_t k);

struct EnumerationResult {
  std::size_t vertex_count = 0;
  std::int32_t k = 0;
  // Codes of all proper colorings, ascending. Outcome i is codes[i].
  std::vector<std::uint64_t> codes;

  std::size_t total_proper() const { return codes.size(); }
  std::optional<std::size_t> index_of(std::span<const Color> colors) const;
  std::vector<Color> coloring(std::size_t index) const;
};

// Backtracking over all k^n assignments. Throws CapacityError past
// kEnumerationLimit.
EnumerationResult enumerate_proper(const Graph& graph, std::int32_t k);

// Exact draw from rho conditioned on no bad vertex at gamma, by rejection.
// Throws CapacityError after `max_rejections` failed draws.
SoftState eta_gamma_oracle(const Graph& graph, std::int32_t k, double gamma,
                           RandomStream& rng,
                           std::int64_t max_rejections = kOracleRejectionLimit);

struct NaiveRejectionResult {
  std::vector<Color> coloring;
  // Draws made, including the accepted one.
  std::int64_t iterations = 0;
};

// Redraws every color until the coloring is proper.
NaiveRejectionResult naive_rejection_sample(
    const Graph& graph, std::int32_t k, RandomStream& rng,
    std::int64_t max_iterations = kOracleRejectionLimit);

struct ChiSquareReport {
  double statistic = 0;
  int degrees_of_freedom = 0;
  double p_value = 1;
  std::int64_t sample_size = 0;
  bool rejected_at_1pct = false;
};

// Upper tail of the chi-square distribution.
double chi_square_p_value(double statistic, int degrees_of_freedom);

// Goodness of fit against the given cell probabilities (which must sum to
// 1). Cells with zero probability must be empty.
ChiSquareReport chi_square_goodness(std::span<const std::int64_t> observed,
                                    std::span<const double> probabilities);
ChiSquareReport chi_square_uniform(std::span<const std::int64_t> observed);
// Homogeneity of two histograms over the same cells; cells empty in both
// are dropped.
ChiSquareReport chi_square_two_sample(std::span<const std::int64_t> a,
                                      std::span<const std::int64_t> b);

// A sampler maps its private stream to one coloring.
using ColoringSampler = std::function<std::vector<Color>(const RandomStream&)>;

// Run i draws from rng.child(kRun, i). Throws ParameterError if runs is
// below 20 per outcome and CapacityError if enumeration is out of reach.
// A sampler returning an improper coloring raises std::logic_error.
ChiSquareReport uniformity_test(const ColoringSampler& sampler,
                                const Graph& graph, std::int32_t k,
                                std::int64_t runs, const RandomStream& rng);
ChiSquareReport two_sample_test(const ColoringSampler& a,
                                const ColoringSampler& b, const Graph& graph,
                                std::int32_t k, std::int64_t runs,
                                const RandomStream& rng);
// Joint law of (c_v, c_w) against the exact marginal from enumeration.
ChiSquareReport marginal_pair_test(const ColoringSampler& sampler,
                                   const Graph& graph, std::int32_t k,
                                   Vertex v, Vertex w, std::int64_t runs,
                                   const RandomStream& rng);

// Histogram of sampler outputs over the enumerated proper colorings.
std::vector<std::int64_t> outcome_counts(const ColoringSampler& sampler,
                                         const EnumerationResult& outcomes,
                                         std::int64_t runs,
                                         const RandomStream& rng);

}  // namespace softprs

#endif  // SOFTPRS_VERIFY_H_
