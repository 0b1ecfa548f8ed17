// Copyright 2026 The Authors.
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

#include "fairselect/theory.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "fairselect/errors.h"

namespace fairselect {

void Validate(const TheoryParams& params) {
  if (!(params.n1 >= 0.0) || !(params.n2 >= 0.0)) {
    throw InputError("theory: group sizes must be >= 0");
  }
  if (!(params.total_capacity >= 0.0) ||
      params.total_capacity > params.n1 + params.n2) {
    throw InputError("theory: need 0 <= K <= n1 + n2");
  }
  if (!(params.beta > 0.0) || !std::isfinite(params.beta)) {
    throw InputError("theory: beta must be finite and > 0");
  }
}

double ExpectedTopSumUniform(double x, double y) {
  if (!(x >= 0.0) || x > y) {
    throw InputError("expected top sum: need 0 <= x <= y, got x=" +
                     std::to_string(x) + ", y=" + std::to_string(y));
  }
  return x - x * (x + 1.0) / (2.0 * (y + 1.0));
}

std::pair<double, double> PredictedAlphas(const TheoryParams& params) {
  Validate(params);
  const double k = params.total_capacity;
  const double b = params.beta;
  const double denom = b * params.n1 + params.n2;
  const double excess = std::max(k - (1.0 - b) * params.n1, 0.0);
  const double a1 = denom > 0.0 ? k - params.n2 / denom * excess : k;
  return {a1, k - a1};
}

UniformPrediction PredictedMetricsUniform(const TheoryParams& params) {
  Validate(params);
  const double k = params.total_capacity;
  const double b = params.beta;
  UniformPrediction out;
  const double denom = k * b + params.n2 * (1.0 - b);
  if (denom > 0.0) {
    out.representation =
        std::clamp((k - params.n1 * (1.0 - b)) / denom, 0.0, 1.0);
  }
  const auto [a1, a2] = PredictedAlphas(params);
  const double best = ExpectedTopSumUniform(k, params.n1 + params.n2);
  if (best > 0.0) {
    // Clamp the alphas into their feasible range against round-off.
    const double s1 = ExpectedTopSumUniform(std::clamp(a1, 0.0, params.n1),
                                            params.n1);
    const double s2 = ExpectedTopSumUniform(std::clamp(a2, 0.0, params.n2),
                                            params.n2);
    out.utility_ratio = (s1 + s2) / best;
  }
  out.preference_upper = out.representation;
  return out;
}

double SymmetricUtilityRatio(double beta) {
  return 2.0 / 3.0 + 4.0 * beta / (3.0 * (beta + 1.0) * (beta + 1.0));
}

LogConcaveBound LogConcaveUpperBound(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw InputError("log-concave bound: beta must lie in (0, 1]");
  }
  // beta ln(1/beta) never exceeds 1/e, so the argument's working assumption
  // is really beta <= 1/2 (at beta = 1 the formula gives 0 while R = 1).
  const double x = beta * std::log(1.0 / beta);
  return {std::min(1.0, 2.0 * x), beta <= 0.5};
}

double UncertaintyBand(double n) {
  if (n <= 1.0) return 1.0;
  return 8.0 * std::sqrt(std::log(n) / n);
}

}  // namespace fairselect
