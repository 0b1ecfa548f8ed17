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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "fairselect/errors.h"
#include "test_support.h"

namespace fairselect {
namespace {

using ::fairselect::testing::RandomPermutation;

// Pairwise count straight from the definition, as an oracle.
int NaiveKendall(const Permutation& a, const Permutation& b) {
  const int p = static_cast<int>(a.size());
  auto pos = [](const Permutation& r, int item) {
    return static_cast<int>(std::find(r.begin(), r.end(), item) - r.begin());
  };
  int d = 0;
  for (int x = 0; x < p; ++x) {
    for (int y = 0; y < p; ++y) {
      if (x < y && (pos(a, x) < pos(a, y)) != (pos(b, x) < pos(b, y))) ++d;
    }
  }
  return d;
}

TEST(UtilityTest, UniformMeanAndRange) {
  Rng rng(1);
  const LatentProfile prof = SampleUtilities(Uniform01{}, 200000, rng);
  double sum = 0.0;
  for (double u : prof.latent_utilities) {
    ASSERT_GE(u, 0.0);
    ASSERT_LE(u, 1.0);
    sum += u;
  }
  // SE of the mean is sqrt(1/12 / n) ~ 6.5e-4.
  EXPECT_NEAR(sum / prof.size(), 0.5, 4 * 6.5e-4);
}

TEST(UtilityTest, ParetoMeanMatchesNumericIntegration) {
  const Pareto dist{3.0, 1.0};
  // E[X] = scale + integral_scale^inf S(x) dx with S(x) = (scale/x)^shape;
  // substitute x = scale / t to integrate over t in (0, 1].
  const int steps = 200000;
  double integral = 0.0;
  for (int s = 0; s < steps; ++s) {
    const double t = (s + 0.5) / steps;
    const double x = dist.scale / t;
    integral += std::pow(dist.scale / x, dist.shape) * dist.scale / (t * t);
  }
  const double mean_oracle = dist.scale + integral / steps;
  EXPECT_NEAR(mean_oracle, 1.5, 1e-6);

  Rng rng(2);
  const int n = 400000;
  const LatentProfile prof = SampleUtilities(dist, n, rng);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double u : prof.latent_utilities) {
    ASSERT_GE(u, 1.0);
    sum += u;
    sum_sq += u * u;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / n);
  EXPECT_NEAR(mean, mean_oracle, 4 * se);
}

TEST(UtilityTest, TruncatedGaussianIsNonNegativeHalfNormal) {
  Rng rng(3);
  const int n = 200000;
  const LatentProfile prof = SampleUtilities(TruncGaussian{}, n, rng);
  double sum = 0.0;
  for (double u : prof.latent_utilities) {
    ASSERT_GE(u, 0.0);
    sum += u;
  }
  // Half-normal mean sqrt(2/pi), sd sqrt(1 - 2/pi).
  const double se = std::sqrt((1.0 - 2.0 / M_PI) / n);
  EXPECT_NEAR(sum / n, std::sqrt(2.0 / M_PI), 4 * se);
}

TEST(UtilityTest, InvalidParametersAreConfigErrors) {
  Rng rng(4);
  EXPECT_THROW(SampleUtilities(Pareto{0.0, 1.0}, 3, rng), ConfigError);
  EXPECT_THROW(SampleUtilities(Pareto{3.0, -1.0}, 3, rng), ConfigError);
  EXPECT_THROW(SampleUtilities(TruncGaussian{0.0, 0.0, 0.0}, 3, rng),
               ConfigError);
  EXPECT_THROW(SampleUtilities(TruncGaussian{0.0, 1.0, 10.0}, 3, rng),
               ConfigError);
  EXPECT_THROW(SampleUtilities(Uniform01{}, 0, rng), ConfigError);
}

TEST(KendallTauTest, Examples) {
  EXPECT_EQ(KendallTau(Permutation{0, 1, 2, 3, 4}, Permutation{0, 1, 2, 3, 4}),
            0);
  EXPECT_EQ(KendallTau(Permutation{4, 3, 2, 1, 0}, Permutation{0, 1, 2, 3, 4}),
            10);
  EXPECT_EQ(KendallTau(Permutation{0, 2, 1, 3}, Permutation{0, 1, 2, 3}), 1);
  EXPECT_THROW(KendallTau(Permutation{0, 0}, Permutation{0, 1}), InputError);
  EXPECT_THROW(KendallTau(Permutation{0, 1}, Permutation{0, 1, 2}),
               InputError);
}

TEST(KendallTauTest, MetricAxiomsOnRandomTriples) {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    const int p = testing::UniformInt(1, 6, rng);
    const Permutation a = RandomPermutation(p, rng);
    const Permutation b = RandomPermutation(p, rng);
    const Permutation c = RandomPermutation(p, rng);
    const int ab = KendallTau(a, b);
    EXPECT_EQ(ab, NaiveKendall(a, b));
    EXPECT_EQ(ab, KendallTau(b, a));
    EXPECT_EQ(ab == 0, a == b);
    EXPECT_LE(KendallTau(a, c), ab + KendallTau(b, c));
    EXPECT_LE(ab, MaxKendallTau(p));
  }
}

// Exact Mallows probabilities by enumerating all p! rankings.
std::map<Permutation, double> ExactMallows(const Permutation& rho, double phi) {
  Permutation perm = rho;
  std::sort(perm.begin(), perm.end());
  std::map<Permutation, double> probs;
  double z = 0.0;
  do {
    const double w = std::pow(phi, NaiveKendall(perm, rho));
    probs[perm] = w;
    z += w;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto& [perm_key, w] : probs) w /= z;
  return probs;
}

void ExpectMallowsMatchesEnumeration(const Permutation& rho, double phi,
                                     int draws, std::uint64_t seed) {
  const MallowsModel model(rho, phi);
  const auto exact = ExactMallows(rho, phi);
  std::map<Permutation, int> counts;
  Rng rng(seed);
  for (int d = 0; d < draws; ++d) ++counts[SampleMallows(model, rng)];
  ASSERT_LE(counts.size(), exact.size());
  for (const auto& [perm, prob] : exact) {
    const double se = std::sqrt(prob * (1.0 - prob) / draws);
    EXPECT_NEAR(static_cast<double>(counts[perm]) / draws, prob, 4 * se)
        << "phi=" << phi << " d=" << NaiveKendall(perm, rho);
  }
}

TEST(MallowsTest, MatchesExactEnumerationP3) {
  ExpectMallowsMatchesEnumeration({0, 1, 2}, 0.5, 100000, 6);
  ExpectMallowsMatchesEnumeration({2, 0, 1}, 0.3, 100000, 7);
}

TEST(MallowsTest, MatchesExactEnumerationP4) {
  ExpectMallowsMatchesEnumeration({0, 1, 2, 3}, 0.6, 200000, 8);
  ExpectMallowsMatchesEnumeration({3, 1, 0, 2}, 0.25, 200000, 9);
}

TEST(MallowsTest, PhiOneIsUniformChiSquare) {
  const MallowsModel model({0, 1, 2}, 1.0);
  std::map<Permutation, int> counts;
  Rng rng(10);
  const int draws = 100000;
  for (int d = 0; d < draws; ++d) ++counts[SampleMallows(model, rng)];
  ASSERT_EQ(counts.size(), 6u);
  double chi2 = 0.0;
  const double expected = draws / 6.0;
  for (const auto& [perm, c] : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 99.9th percentile of chi-square with 5 degrees of freedom.
  EXPECT_LT(chi2, 20.52);
}

TEST(MallowsTest, TinyPhiConcentratesOnCentral) {
  const Permutation rho = {3, 0, 4, 1, 2};
  const MallowsModel model(rho, 1e-9);
  Rng rng(11);
  for (int d = 0; d < 1000; ++d) EXPECT_EQ(SampleMallows(model, rng), rho);
}

TEST(MallowsTest, RejectsInvalidModels) {
  EXPECT_THROW(MallowsModel({0, 1}, 0.0), ConfigError);
  EXPECT_THROW(MallowsModel({0, 1}, 1.5), ConfigError);
  EXPECT_THROW(MallowsModel({0, 0}, 0.5), ConfigError);
}

TEST(RankingAtDistanceTest, Endpoints) {
  Rng rng(12);
  const Permutation rho = {2, 0, 3, 1, 4};
  EXPECT_EQ(RankingAtDistance(rho, 0, rng), rho);
  Permutation reversed(rho.rbegin(), rho.rend());
  EXPECT_EQ(RankingAtDistance(rho, 10, rng), reversed);
  EXPECT_THROW(RankingAtDistance(rho, 11, rng), InputError);
  EXPECT_THROW(RankingAtDistance(rho, -1, rng), InputError);
}

TEST(RankingAtDistanceTest, ExactDistanceAlways) {
  Rng rng(13);
  for (int t = 0; t < 2000; ++t) {
    const int p = testing::UniformInt(1, 12, rng);
    const Permutation rho = RandomPermutation(p, rng);
    const int gamma = testing::UniformInt(0, MaxKendallTau(p), rng);
    const Permutation out = RankingAtDistance(rho, gamma, rng);
    ASSERT_EQ(KendallTau(rho, out), gamma) << "p=" << p;
  }
  const Permutation rho = {0, 1, 2, 3, 4};
  EXPECT_EQ(KendallTau(rho, RankingAtDistance(rho, 3, rng)), 3);
}

TEST(RankingAtDistanceTest, UniformOverInversionTables) {
  // For p = 4 every ranking has a distinct inversion table, so the sampler
  // should be uniform over the rankings at the requested distance.
  const Permutation rho = {0, 1, 2, 3};
  const int gamma = 3;
  Permutation perm = rho;
  int at_distance = 0;
  do {
    at_distance += NaiveKendall(perm, rho) == gamma;
  } while (std::next_permutation(perm.begin(), perm.end()));
  ASSERT_EQ(at_distance, 6);
  std::map<Permutation, int> counts;
  Rng rng(14);
  const int draws = 60000;
  for (int d = 0; d < draws; ++d) ++counts[RankingAtDistance(rho, gamma, rng)];
  ASSERT_EQ(static_cast<int>(counts.size()), at_distance);
  const double prob = 1.0 / at_distance;
  const double se = std::sqrt(prob * (1 - prob) / draws);
  for (const auto& [p, c] : counts) {
    EXPECT_NEAR(static_cast<double>(c) / draws, prob, 4 * se);
  }
}

TEST(RngTest, KeyedStreamsAreReproducibleAndDistinct) {
  Rng a = KeyedStream(42, 1, 2);
  Rng b = KeyedStream(42, 1, 2);
  Rng c = KeyedStream(42, 2, 1);
  Rng d = KeyedStream(43, 1, 2);
  const auto va = a();
  EXPECT_EQ(va, b());
  EXPECT_NE(va, c());
  EXPECT_NE(va, d());
}

}  // namespace
}  // namespace fairselect
