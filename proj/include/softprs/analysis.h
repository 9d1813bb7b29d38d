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

#ifndef SOFTPRS_ANALYSIS_H_
#define SOFTPRS_ANALYSIS_H_

#include <cstdint>
#include <span>

namespace softprs::analysis {

// Per-neighbor probability of a non-passive same-color conflict on a
// max-degree-delta graph: (1 - gamma)(1 - gamma^delta) / k.
double alpha(double gamma, int delta, std::int32_t k);

// Probability under rho that a vertex with the given neighbor degrees is bad.
double p_bad_general(double gamma, std::span<const int> neighbor_degrees,
                     std::int32_t k);
// Same for a delta-regular neighborhood; an upper bound when delta is the
// maximum degree.
double p_bad_regular(double gamma, int delta, std::int32_t k);

double expected_bad_regular(std::int64_t n, double gamma, int delta,
                            std::int32_t k);
// Sums p_bad_general over all vertices given each vertex's neighbor degrees.
double expected_bad_general(std::span<const std::span<const int>> neighborhoods,
                            double gamma, std::int32_t k);

// gamma^degree with 0^0 = 1.
double p_passive(double gamma, int degree);

// ((delta - 2) / (delta - 1))^(1 / delta). Throws ParameterError for delta < 3.
double gamma_critical(int delta);

// floor(log gamma* / log base): levels of a geometric schedule above gamma*.
int effective_level_count(double gamma_base, int delta);

// e delta^3 (1 - gamma*)(1 - gamma*^delta).
double k_sufficient(int delta);

// q = 1 - gamma^delta, the non-passive probability on a delta-regular graph.
double non_passive_fraction(double gamma, int delta);
// log(1 / (q (delta - 1))). Throws ParameterError when q (delta - 1) >= 1,
// i.e. at or below the critical gamma.
double percolation_decay_rate(double gamma, int delta);
// 1 / (1 - q (delta - 1)), with the same domain as the decay rate.
double expected_cluster_size(double gamma, int delta);

// delta (1 - gamma)(1 - gamma^delta) / c(gamma, delta).
double k_hybrid_bound(double gamma, int delta);

// (k / (k - 1))^|E|. Throws ParameterError for k < 2.
double nrs_fullgraph_expected_iterations_bound(std::int32_t k,
                                               std::int64_t edge_count);

// Local lemma feasibility: e p (delta^2 + 1) <= 1.
bool lll_condition(double p_bad, int delta);

}  // namespace softprs::analysis

#endif  // SOFTPRS_ANALYSIS_H_
