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

#include "fairselect/sampling.h"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "fairselect/errors.h"

namespace fairselect {
namespace {

// Rejection sampling is only sensible while a decent fraction of the
// Gaussian mass sits above the bound.
constexpr double kMaxStandardizedBound = 4.0;

struct Validator {
  void operator()(const Uniform01&) const {}
  void operator()(const TruncGaussian& d) const {
    if (!(d.std > 0.0) || !std::isfinite(d.mean) ||
        !std::isfinite(d.lower_bound)) {
      throw ConfigError("truncated gaussian: need finite mean/bound, std > 0");
    }
    if ((d.lower_bound - d.mean) / d.std > kMaxStandardizedBound) {
      throw ConfigError(
          "truncated gaussian: lower bound too far in the upper tail for "
          "rejection sampling");
    }
  }
  void operator()(const Pareto& d) const {
    if (!(d.shape > 0.0) || !(d.scale > 0.0)) {
      throw ConfigError("pareto: shape and scale must be > 0");
    }
  }
};

struct Sampler {
  Rng& rng;
  double operator()(const Uniform01&) const { return UniformUnit(rng); }
  double operator()(const TruncGaussian& d) const {
    std::normal_distribution<double> normal(d.mean, d.std);
    while (true) {
      const double x = normal(rng);
      if (x >= d.lower_bound) return x;
    }
  }
  double operator()(const Pareto& d) const {
    // Inverse CDF; 1 - U lies in (0, 1].
    const double u = 1.0 - UniformUnit(rng);
    return d.scale * std::pow(u, -1.0 / d.shape);
  }
};

void CheckPermutation(std::span<const int> a, const char* what) {
  if (!IsPermutation(a)) {
    throw InputError(std::string(what) + ": input is not a permutation");
  }
}

}  // namespace

void Validate(const UtilityDistribution& dist) {
  std::visit(Validator{}, dist);
}

double SampleUtility(const UtilityDistribution& dist, Rng& rng) {
  return std::visit(Sampler{rng}, dist);
}

LatentProfile SampleUtilities(const UtilityDistribution& dist, int n,
                              Rng& rng) {
  if (n < 1) throw ConfigError("sample_utilities: n must be >= 1");
  Validate(dist);
  LatentProfile profile;
  profile.latent_utilities.reserve(n);
  for (int i = 0; i < n; ++i) {
    profile.latent_utilities.push_back(SampleUtility(dist, rng));
  }
  return profile;
}

int KendallTau(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw InputError("kendall_tau: rankings differ in length");
  }
  CheckPermutation(a, "kendall_tau");
  CheckPermutation(b, "kendall_tau");
  const int p = static_cast<int>(a.size());
  std::vector<int> pos_b(p);
  for (int r = 0; r < p; ++r) pos_b[b[r]] = r;
  int discordant = 0;
  for (int x = 0; x < p; ++x) {
    for (int y = x + 1; y < p; ++y) {
      if (pos_b[a[x]] > pos_b[a[y]]) ++discordant;
    }
  }
  return discordant;
}

MallowsModel::MallowsModel(Permutation central, double dispersion)
    : central_(std::move(central)), dispersion_(dispersion) {
  if (!(dispersion_ > 0.0 && dispersion_ <= 1.0)) {
    throw ConfigError("mallows: dispersion must lie in (0, 1]");
  }
  if (!IsPermutation(central_)) {
    throw ConfigError("mallows: central ranking is not a permutation");
  }
}

Permutation SampleMallows(const MallowsModel& model, Rng& rng) {
  const int p = model.size();
  const double phi = model.dispersion();
  Permutation ranking;
  ranking.reserve(p);
  std::vector<double> weights;
  weights.reserve(p);
  for (int r = 0; r < p; ++r) {
    // Inserting at position j places the new item ahead of r - j items that
    // precede it in the central ranking.
    weights.assign(r + 1, 0.0);
    double w = 1.0;
    for (int j = r; j >= 0; --j) {
      weights[j] = w;
      w *= phi;
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double target = UniformUnit(rng) * total;
    int pos = r;
    for (int j = 0; j <= r; ++j) {
      if (target < weights[j]) {
        pos = j;
        break;
      }
      target -= weights[j];
    }
    ranking.insert(ranking.begin() + pos, model.central()[r]);
  }
  return ranking;
}

Permutation RankingAtDistance(std::span<const int> central, int gamma,
                              Rng& rng) {
  CheckPermutation(central, "ranking_at_distance");
  const int p = static_cast<int>(central.size());
  if (gamma < 0 || gamma > MaxKendallTau(p)) {
    throw InputError("ranking_at_distance: gamma " + std::to_string(gamma) +
                     " outside [0, " + std::to_string(MaxKendallTau(p)) + "]");
  }
  // ways[j][s]: number of inversion-table suffixes c_j..c_{p-1} summing to s.
  std::vector<std::vector<long double>> ways(
      p + 1, std::vector<long double>(gamma + 1, 0.0L));
  ways[p][0] = 1.0L;
  for (int j = p - 1; j >= 0; --j) {
    const int cap = p - 1 - j;
    for (int s = 0; s <= gamma; ++s) {
      long double total = 0.0L;
      for (int c = 0; c <= std::min(cap, s); ++c) total += ways[j + 1][s - c];
      ways[j][s] = total;
    }
  }

  // Remaining items are tracked by their position in `central`; choosing the
  // c-th smallest remaining position puts c inversions ahead of it.
  std::vector<int> remaining(p);
  std::iota(remaining.begin(), remaining.end(), 0);
  Permutation ranking;
  ranking.reserve(p);
  int left = gamma;
  for (int j = 0; j < p; ++j) {
    const int cap = std::min(p - 1 - j, left);
    long double target =
        static_cast<long double>(UniformUnit(rng)) * ways[j][left];
    int chosen = cap;
    for (int c = 0; c <= cap; ++c) {
      const long double w = ways[j + 1][left - c];
      if (target < w) {
        chosen = c;
        break;
      }
      target -= w;
    }
    // Floating round-off can leave `chosen` on an infeasible suffix.
    while (ways[j + 1][left - chosen] == 0.0L) --chosen;
    ranking.push_back(central[remaining[chosen]]);
    remaining.erase(remaining.begin() + chosen);
    left -= chosen;
  }
  return ranking;
}

Permutation IdentityRanking(int p) {
  Permutation ranking(p);
  std::iota(ranking.begin(), ranking.end(), 0);
  return ranking;
}

}  // namespace fairselect
