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

#ifndef FAIRSELECT_SAMPLING_H_
#define FAIRSELECT_SAMPLING_H_

#include <span>
#include <variant>

#include "fairselect/core.h"
#include "fairselect/rng.h"

namespace fairselect {

struct Uniform01 {};

// Gaussian conditioned on x >= lower_bound, drawn by rejection.
struct TruncGaussian {
  double mean = 0.0;
  double std = 1.0;
  double lower_bound = 0.0;
};

// Classical Pareto on [scale, inf) with tail index `shape`.
struct Pareto {
  double shape = 3.0;
  double scale = 1.0;
};

using UtilityDistribution = std::variant<Uniform01, TruncGaussian, Pareto>;

// Throws ConfigError on invalid parameters.
void Validate(const UtilityDistribution& dist);

double SampleUtility(const UtilityDistribution& dist, Rng& rng);

// n i.i.d. draws from `dist`.
LatentProfile SampleUtilities(const UtilityDistribution& dist, int n, Rng& rng);

// Number of item pairs the two rankings order differently. Throws InputError
// unless both are permutations of the same length.
int KendallTau(std::span<const int> a, std::span<const int> b);

inline int MaxKendallTau(int p) { return p * (p - 1) / 2; }

// Mallows distribution: Pr(sigma) proportional to
// dispersion^KendallTau(sigma, central).
class MallowsModel {
 public:
  // Throws ConfigError unless 0 < dispersion <= 1 and `central` is a
  // permutation.
  MallowsModel(Permutation central, double dispersion);

  const Permutation& central() const { return central_; }
  double dispersion() const { return dispersion_; }
  int size() const { return static_cast<int>(central_.size()); }

 private:
  Permutation central_;
  double dispersion_;
};

// Exact draw by repeated insertion: the r-th item of the central ranking is
// inserted at a position creating d new inversions with weight dispersion^d.
Permutation SampleMallows(const MallowsModel& model, Rng& rng);

// A ranking at Kendall distance exactly `gamma` from `central`. The inversion
// table (c_0..c_{p-1}, 0 <= c_j <= p-1-j, sum = gamma) is drawn uniformly
// and decoded relative to `central`. Throws InputError unless
// 0 <= gamma <= p(p-1)/2.
Permutation RankingAtDistance(std::span<const int> central, int gamma,
                              Rng& rng);

// Identity ranking 0..p-1.
Permutation IdentityRanking(int p);

}  // namespace fairselect

#endif  // FAIRSELECT_SAMPLING_H_
