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

#ifndef FAIRSELECT_THEORY_H_
#define FAIRSELECT_THEORY_H_

#include <utility>

namespace fairselect {

// Two-group setting for the closed-form predictions. The eta fields are the
// lower-bound fractions that only enter the error terms; they are carried
// for reporting.
struct TheoryParams {
  double n1 = 0.0;  // Advantaged group size.
  double n2 = 0.0;  // Disadvantaged group size.
  double total_capacity = 0.0;
  double beta = 1.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eta3 = 0.0;
};

// Throws InputError unless n1, n2 >= 0, 0 <= K <= n1 + n2 and beta > 0.
void Validate(const TheoryParams& params);

// Expected sum of the largest x of y i.i.d. Uniform[0, 1] draws:
// x - x (x + 1) / (2 (y + 1)). Throws InputError unless 0 <= x <= y.
double ExpectedTopSumUniform(double x, double y);

// Expected number of selected candidates from each group under a
// utility-maximizing selection with uniform utilities:
// a1 = K - n2 / (beta n1 + n2) * max(K - (1 - beta) n1, 0), a2 = K - a1.
std::pair<double, double> PredictedAlphas(const TheoryParams& params);

struct UniformPrediction {
  double representation = 1.0;   // R
  double utility_ratio = 1.0;    // U
  double preference_upper = 1.0; // Upper bound on P for the stable assignment.
};

// Large-n limits of R and U (and the bound on P) for the unconstrained stable
// assignment with Uniform[0, 1] latent utilities.
UniformPrediction PredictedMetricsUniform(const TheoryParams& params);

// U in the symmetric case n1 = n2 = K: 2/3 + 4 beta / (3 (beta + 1)^2).
double SymmetricUtilityRatio(double beta);

struct LogConcaveBound {
  double value = 1.0;    // min(1, 2 beta ln(1 / beta))
  bool applies = false;  // beta <= 1/2; beyond that the value is not a bound.
};

// Upper bound on R and P for any log-concave utility density with
// n1 = n2 = K. Throws InputError unless 0 < beta <= 1.
LogConcaveBound LogConcaveUpperBound(double beta);

// Display-only width of the O(sqrt(log n / n)) error terms: 8 sqrt(log n / n).
double UncertaintyBand(double n);

}  // namespace fairselect

#endif  // FAIRSELECT_THEORY_H_
