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

#include "fairselect/metrics.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "fairselect/bias.h"
#include "fairselect/errors.h"
#include "fairselect/matching.h"
#include "fairselect/sampling.h"
#include "test_support.h"

namespace fairselect {
namespace {

using ::fairselect::testing::UniformInt;

Instance MallowsInstance(std::vector<int> caps, std::vector<double> observed,
                         double phi, Rng& rng) {
  const MallowsModel model(IdentityRanking(static_cast<int>(caps.size())), phi);
  std::vector<Permutation> prefs;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    prefs.push_back(SampleMallows(model, rng));
  }
  return Instance(std::move(caps), std::move(observed), std::move(prefs));
}

TEST(MinMaxRatioTest, ZeroOverZeroIsOne) {
  EXPECT_DOUBLE_EQ(MinMaxRatio(std::vector<double>{0.0, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(MinMaxRatio(std::vector<double>{0.2, 0.4}), 0.5);
  EXPECT_DOUBLE_EQ(MinMaxRatio(std::vector<double>{0.0, 0.4}), 0.0);
}

TEST(UtilityRatioTest, TopKSelectionIsOne) {
  const LatentProfile latent{{0.3, 0.9, 0.1, 0.5}};
  EXPECT_DOUBLE_EQ(
      UtilityRatio(Assignment({std::nullopt, 0, std::nullopt, 1}), latent, 2),
      1.0);
  EXPECT_DOUBLE_EQ(
      UtilityRatio(Assignment({0, std::nullopt, 1, std::nullopt}), latent, 2),
      0.4 / 1.4);
  EXPECT_THROW(UtilityRatio(Assignment(4), latent, 5), InputError);
  EXPECT_DOUBLE_EQ(UtilityRatio(Assignment(2), LatentProfile{{0.0, 0.0}}, 1),
                   1.0);
}

TEST(UtilityRatioTest, UnbiasedSerialDictatorshipIsExactlyOne) {
  Rng rng(1);
  const LatentProfile latent = SampleUtilities(Uniform01{}, 500, rng);
  const Instance inst =
      MallowsInstance({50, 50}, latent.latent_utilities, 0.5, rng);
  EXPECT_DOUBLE_EQ(UtilityRatio(SerialDictatorship(inst), latent, 100), 1.0);
}

TEST(RepresentationTest, CountsAndZeroRepresentation) {
  const GroupLabels groups({0, 0, 1, 1}, 2);
  const auto rep =
      RepresentationalFairness(Assignment({0, 0, std::nullopt, std::nullopt}),
                               groups);
  EXPECT_EQ(rep.fractions, (std::vector<double>{1.0, 0.0}));
  EXPECT_DOUBLE_EQ(rep.ratio, 0.0);
  EXPECT_DOUBLE_EQ(RepresentationalFairness(Assignment(4), groups).ratio, 1.0);
  EXPECT_THROW(RepresentationalFairness(Assignment(2), GroupLabels({0, 0}, 2)),
               InputError);
  EXPECT_THROW(RepresentationalFairness(Assignment(2), GroupLabels({0, 0}, 1)),
               InputError);
}

TEST(PreferenceFairnessTest, TopLCounts) {
  const Instance inst({1, 1, 1}, {0.9, 0.8, 0.7, 0.6},
                      {{0, 1, 2}, {0, 1, 2}, {2, 0, 1}, {1, 0, 2}});
  const GroupLabels groups({0, 1, 0, 1}, 2);
  const Assignment a({0, 1, 2, std::nullopt});
  const auto p1 = PreferenceFairness(a, inst, groups, 1);
  EXPECT_EQ(p1.fractions, (std::vector<double>{1.0, 0.0}));
  const auto p2 = PreferenceFairness(a, inst, groups, 2);
  EXPECT_EQ(p2.fractions, (std::vector<double>{1.0, 0.5}));
  EXPECT_DOUBLE_EQ(p2.ratio, 0.5);
  EXPECT_THROW(PreferenceFairness(a, inst, groups, 0), InputError);
  EXPECT_THROW(PreferenceFairness(a, inst, groups, 4), InputError);
}

TEST(PreferenceFairnessTest, FullDepthEqualsRepresentation) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const Instance inst = testing::RandomInstance(UniformInt(4, 60, rng),
                                                  UniformInt(1, 6, rng), 6, rng);
    const GroupLabels groups = testing::RandomGroups(inst.num_candidates(), 2, rng);
    const Assignment a = SerialDictatorship(inst);
    const auto pp = PreferenceFairness(a, inst, groups, inst.num_institutions());
    const auto rep = RepresentationalFairness(a, groups);
    EXPECT_EQ(pp.fractions, rep.fractions);
    EXPECT_DOUBLE_EQ(pp.ratio, rep.ratio);
  }
}

// Per-group top-l fractions grow with l. The min/max ratio of those
// fractions does not have to: the counterexample below goes from 1 to 0.5.
TEST(PreferenceFairnessTest, GroupFractionsMonotoneRatioNotNecessarily) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const Instance inst = testing::RandomInstance(UniformInt(4, 60, rng),
                                                  UniformInt(1, 6, rng), 6, rng);
    const GroupLabels groups = testing::RandomGroups(inst.num_candidates(), 2, rng);
    const Assignment a = SerialDictatorship(inst);
    std::vector<double> previous(2, 0.0);
    for (int ell = 1; ell <= inst.num_institutions(); ++ell) {
      const auto pf = PreferenceFairness(a, inst, groups, ell);
      for (int g = 0; g < 2; ++g) {
        EXPECT_GE(pf.fractions[g], previous[g]);
        previous[g] = pf.fractions[g];
      }
    }
  }
  const Instance inst({1, 1, 1}, {0.9, 0.8, 0.7, 0.6},
                      {{0, 1, 2}, {0, 1, 2}, {2, 0, 1}, {2, 1, 0}});
  const GroupLabels groups({0, 0, 1, 1}, 2);
  const Assignment a({0, 1, 2, std::nullopt});
  EXPECT_DOUBLE_EQ(PreferenceFairness(a, inst, groups, 1).ratio, 1.0);
  EXPECT_DOUBLE_EQ(PreferenceFairness(a, inst, groups, 2).ratio, 0.5);
}

TEST(MetricsInvarianceTest, RelabelingWithinGroups) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const int n = UniformInt(6, 50, rng);
    const Instance inst = testing::RandomInstance(n, UniformInt(2, 5, rng), 5, rng);
    const GroupLabels groups = testing::RandomGroups(n, 2, rng);
    const LatentProfile latent{
        std::vector<double>(inst.utilities().begin(), inst.utilities().end())};
    const Assignment a = SerialDictatorship(inst);
    const std::vector<int> ells = {1, 2};
    const MetricsReport base = ComputeMetrics(inst, latent, groups, a, ells);

    // Apply a permutation of candidate indices that maps each group onto
    // itself.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int g = 0; g < 2; ++g) {
      auto members = groups.Members(g);
      auto shuffled = members;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      for (std::size_t k = 0; k < members.size(); ++k) perm[members[k]] = shuffled[k];
    }
    std::vector<double> u(n);
    std::vector<Permutation> prefs(n);
    std::vector<std::optional<Institution>> slots(n);
    for (int i = 0; i < n; ++i) {
      u[perm[i]] = inst.utilities()[i];
      prefs[perm[i]] = inst.preference(i);
      slots[perm[i]] = a[i];
    }
    const Instance moved(std::vector<int>(inst.capacities().begin(),
                                          inst.capacities().end()),
                         u, prefs);
    const MetricsReport after = ComputeMetrics(moved, LatentProfile{u}, groups,
                                               Assignment(slots), ells);
    EXPECT_DOUBLE_EQ(after.utility_ratio, base.utility_ratio);
    EXPECT_DOUBLE_EQ(after.representation.ratio, base.representation.ratio);
    for (std::size_t k = 0; k < ells.size(); ++k) {
      EXPECT_DOUBLE_EQ(after.preference[k].fairness.ratio,
                       base.preference[k].fairness.ratio);
    }
  }
}

TEST(MetricsInvarianceTest, GroupAndInstitutionWiseSelectSameSet) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const int n = 400;
    const GroupLabels groups = testing::Halves(n);
    const LatentProfile latent = SampleUtilities(Uniform01{}, n, rng);
    const auto observed =
        ApplyBias(BetaBias{{1.0, 0.3 + 0.6 * UniformUnit(rng)}}, latent, groups, rng);
    std::vector<int> caps(UniformInt(2, 5, rng));
    for (int& k : caps) k = 2 * UniformInt(1, 20, rng);  // Even seats.
    const Instance inst = MallowsInstance(caps, observed, 0.5, rng);
    const Assignment grp = GroupConstrained(inst, groups);
    const Assignment iw = InstitutionWise(inst, groups);
    EXPECT_EQ(testing::SelectedSet(grp), testing::SelectedSet(iw));
    EXPECT_DOUBLE_EQ(UtilityRatio(grp, latent, inst.total_capacity()),
                     UtilityRatio(iw, latent, inst.total_capacity()));
  }
}

TEST(ComputeMetricsTest, FewerCandidatesThanSeats) {
  const Instance inst({5}, {0.4, 0.2}, {{0}, {0}});
  const GroupLabels groups({0, 1}, 2);
  const LatentProfile latent{{0.4, 0.2}};
  const MetricsReport r = ComputeMetrics(inst, latent, groups,
                                         SerialDictatorship(inst),
                                         std::vector<int>{1});
  EXPECT_DOUBLE_EQ(r.utility_ratio, 1.0);
  EXPECT_DOUBLE_EQ(r.representation.ratio, 1.0);
  EXPECT_DOUBLE_EQ(r.preference[0].fairness.ratio, 1.0);
}

}  // namespace
}  // namespace fairselect
