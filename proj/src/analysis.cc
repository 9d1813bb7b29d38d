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

#include "softprs/analysis.h"

#include <cmath>
#include <numbers>
#include <string>

#include "softprs/errors.h"

namespace softprs::analysis {
namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ParameterError("gamma must lie in [0, 1]");
  }
}

void check_k(std::int32_t k) {
  if (k < 1) throw ParameterError("k must be at least 1");
}

void check_delta(int delta) {
  if (delta < 3) {
    throw ParameterError("undefined for delta < 3 (got " + std::to_string(delta) + ")");
  }
}

// Returns q (delta - 1) after checking it is subcritical.
double branching(double gamma, int delta) {
  check_delta(delta);
  const double m = non_passive_fraction(gamma, delta) * (delta - 1);
  if (m >= 1.0) {
    throw ParameterError("gamma at or below the critical value; clusters are not finite");
  }
  return m;
}

}  // namespace

double p_passive(double gamma, int degree) {
  check_gamma(gamma);
  if (degree < 0) throw ParameterError("degree must be non-negative");
  return std::pow(gamma, degree);  // pow(0, 0) == 1
}

double alpha(double gamma, int delta, std::int32_t k) {
  check_k(k);
  return (1.0 - gamma) * (1.0 - p_passive(gamma, delta)) / k;
}

double p_bad_general(double gamma, std::span<const int> neighbor_degrees,
                     std::int32_t k) {
  check_gamma(gamma);
  check_k(k);
  double none = 1.0;
  for (int d : neighbor_degrees) {
    none *= 1.0 - (1.0 - gamma) * (1.0 - p_passive(gamma, d)) / k;
  }
  return 1.0 - none;
}

double p_bad_regular(double gamma, int delta, std::int32_t k) {
  check_gamma(gamma);
  if (delta < 0) throw ParameterError("delta must be non-negative");
  return 1.0 - std::pow(1.0 - alpha(gamma, delta, k), delta);
}

double expected_bad_regular(std::int64_t n, double gamma, int delta,
                            std::int32_t k) {
  return static_cast<double>(n) * p_bad_regular(gamma, delta, k);
}

double expected_bad_general(std::span<const std::span<const int>> neighborhoods,
                            double gamma, std::int32_t k) {
  double total = 0;
  for (auto degrees : neighborhoods) total += p_bad_general(gamma, degrees, k);
  return total;
}

double gamma_critical(int delta) {
  check_delta(delta);
  return std::pow(static_cast<double>(delta - 2) / (delta - 1), 1.0 / delta);
}

int effective_level_count(double gamma_base, int delta) {
  if (!(gamma_base > 0.0 && gamma_base < 1.0)) {
    throw ParameterError("gamma base must lie in (0, 1)");
  }
  return static_cast<int>(
      std::floor(std::log(gamma_critical(delta)) / std::log(gamma_base)));
}

double k_sufficient(int delta) {
  const double g = gamma_critical(delta);
  const double g_pow = static_cast<double>(delta - 2) / (delta - 1);
  return std::numbers::e * std::pow(delta, 3) * (1.0 - g) * (1.0 - g_pow);
}

double non_passive_fraction(double gamma, int delta) {
  return 1.0 - p_passive(gamma, delta);
}

double percolation_decay_rate(double gamma, int delta) {
  return std::log(1.0 / branching(gamma, delta));
}

double expected_cluster_size(double gamma, int delta) {
  return 1.0 / (1.0 - branching(gamma, delta));
}

double k_hybrid_bound(double gamma, int delta) {
  const double c = percolation_decay_rate(gamma, delta);
  return delta * (1.0 - gamma) * (1.0 - std::pow(gamma, delta)) / c;
}

double nrs_fullgraph_expected_iterations_bound(std::int32_t k,
                                               std::int64_t edge_count) {
  if (k < 2) throw ParameterError("k must be at least 2");
  return std::pow(static_cast<double>(k) / (k - 1), static_cast<double>(edge_count));
}

bool lll_condition(double p_bad, int delta) {
  return std::numbers::e * p_bad * (static_cast<double>(delta) * delta + 1) <= 1.0;
}

}  // namespace softprs::analysis
