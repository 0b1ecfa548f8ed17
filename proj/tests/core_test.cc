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

#include "fairselect/core.h"

#include <gtest/gtest.h>

#include <optional>
#include <vector>

#include "fairselect/errors.h"
#include "fairselect/matching.h"
#include "test_support.h"

namespace fairselect {
namespace {

using ::fairselect::testing::RandomInstance;

Instance TwoCandidatesOneSlot() {
  return Instance({1}, {0.9, 0.1}, {{0}, {0}});
}

TEST(InstanceTest, RejectsMalformedInput) {
  EXPECT_THROW(Instance({1}, {0.5}, {{1}}), InputError);
  EXPECT_THROW(Instance({1, 1}, {0.5}, {{0, 0}}), InputError);
  EXPECT_THROW(Instance({-1}, {0.5}, {{0}}), InputError);
  EXPECT_THROW(Instance({1}, {0.5, 0.4}, {{0}}), InputError);
  EXPECT_THROW(Instance({1}, {std::nan("")}, {{0}}), InputError);
}

TEST(InstanceTest, RankTableAndTieBreak) {
  const Instance inst({1, 1, 1}, {0.5, 0.5, 0.7},
                      {{2, 0, 1}, {0, 1, 2}, {1, 2, 0}});
  EXPECT_EQ(inst.total_capacity(), 3);
  EXPECT_EQ(inst.RankOf(0, 2), 0);
  EXPECT_EQ(inst.RankOf(0, 1), 2);
  EXPECT_TRUE(inst.Outranks(0, 1));  // Equal utility, lower index wins.
  EXPECT_FALSE(inst.Outranks(1, 0));
  EXPECT_TRUE(inst.Outranks(2, 0));
  EXPECT_EQ(OrderByUtility(inst), (std::vector<int>{2, 0, 1}));
}

TEST(GroupLabelsTest, SizesAndMembers) {
  const GroupLabels groups({0, 1, 0, 1, 1}, 2);
  EXPECT_EQ(groups.GroupSizes(), (std::vector<int>{2, 3}));
  EXPECT_EQ(groups.Members(1), (std::vector<int>{1, 3, 4}));
  EXPECT_THROW(GroupLabels({0, 2}, 2), InputError);
}

TEST(VerifyStableTest, HigherUtilityHoldsOnlySlot) {
  const Instance inst = TwoCandidatesOneSlot();
  EXPECT_TRUE(VerifyStable(inst, Assignment({0, std::nullopt})));
}

TEST(VerifyStableTest, LowerUtilityHoldingSlotIsBlocked) {
  const Instance inst = TwoCandidatesOneSlot();
  EXPECT_FALSE(VerifyStable(inst, Assignment({std::nullopt, 0})));
}

TEST(VerifyStableTest, VacantSlotBlocks) {
  const Instance inst({2}, {0.9, 0.1}, {{0}, {0}});
  EXPECT_FALSE(VerifyStable(inst, Assignment({0, std::nullopt})));
}

TEST(VerifyStableTest, LengthMismatchAndOverfullAreInputErrors) {
  const Instance inst = TwoCandidatesOneSlot();
  EXPECT_THROW(VerifyStable(inst, Assignment(3)), InputError);
  EXPECT_THROW(VerifyStable(inst, Assignment({0, 0})), InputError);
}

// Two-sided stability with institution-specific rankings (rank[j][i], lower
// is better). Independent of the library's common-ranking check.
bool TwoSidedStable(const Instance& inst,
                    const std::vector<std::vector<int>>& inst_rank,
                    const Assignment& m) {
  for (int i = 0; i < inst.num_candidates(); ++i) {
    for (int j : inst.preference(i)) {
      if (m[i] == j) break;  // Everything further down is worse for i.
      const auto holders = m.AssignedTo(j);
      if (static_cast<int>(holders.size()) < inst.capacities()[j]) return false;
      for (int h : holders) {
        if (inst_rank[j][i] < inst_rank[j][h]) return false;
      }
    }
  }
  return true;
}

// Two institutions A=0, B=1 with capacity 2; candidates 0,1 prefer A
// (type I), 2,3 prefer B (type II). A ranks type II first, B ranks type I
// first. Putting type II at A and type I at B gives nobody their top choice
// yet no pair blocks.
TEST(VerifyStableTest, TwoSidedCounterexampleNeedsCommonRanking) {
  const Instance inst({2, 2}, {0.4, 0.3, 0.2, 0.1},
                      {{0, 1}, {0, 1}, {1, 0}, {1, 0}});
  const std::vector<std::vector<int>> inst_rank = {{2, 3, 0, 1},
                                                   {0, 1, 2, 3}};
  const Assignment m({1, 1, 0, 0});
  EXPECT_TRUE(TwoSidedStable(inst, inst_rank, m));
  // Under one common ranking the same assignment is blocked for every
  // ordering of the utilities: someone of the higher-ranked type is denied
  // the institution holding the other type.
  EXPECT_FALSE(VerifyStable(inst, m));
  const Instance flipped({2, 2}, {0.1, 0.2, 0.3, 0.4}, {{0, 1}, {0, 1},
                                                        {1, 0}, {1, 0}});
  EXPECT_FALSE(VerifyStable(flipped, m));
  // With a common ranking everybody can get their top choice here.
  EXPECT_EQ(SerialDictatorship(inst), Assignment({0, 0, 1, 1}));
}

TEST(BruteForceStableTest, ForcedGreedyOrder) {
  const Instance inst({1, 1}, {0.9, 0.1}, {{0, 1}, {0, 1}});
  const auto stable = BruteForceStable(inst);
  ASSERT_EQ(stable.size(), 1u);
  EXPECT_EQ(stable[0], Assignment({0, 1}));
}

TEST(BruteForceStableTest, RejectsOversizedInstances) {
  Rng rng(1);
  EXPECT_THROW(BruteForceStable(RandomInstance(kOracleMaxCandidates + 1, 2, 2,
                                               rng)),
               SizeError);
  EXPECT_THROW(BruteForceStable(RandomInstance(3, kOracleMaxInstitutions + 1,
                                               1, rng)),
               SizeError);
}

TEST(BruteForceStableTest, NLessThanKAssignsEveryone) {
  const Instance inst({2, 2}, {0.3, 0.6}, {{1, 0}, {1, 0}});
  const auto stable = BruteForceStable(inst);
  ASSERT_EQ(stable.size(), 1u);
  EXPECT_EQ(stable[0], Assignment({1, 1}));
}

TEST(BruteForceStableTest, ThreeCandidatesTwoSeats) {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const Instance inst = Instance(
        {1, 1}, {UniformUnit(rng), UniformUnit(rng), UniformUnit(rng)},
        {testing::RandomPermutation(2, rng), testing::RandomPermutation(2, rng),
         testing::RandomPermutation(2, rng)});
    const auto stable = BruteForceStable(inst);
    ASSERT_EQ(stable.size(), 1u);
    EXPECT_EQ(stable[0], SerialDictatorship(inst));
  }
}

TEST(BruteForceStableTest, ScalingExampleFixedDraw) {
  const Instance inst({2, 2}, {0.8, 0.6, 0.4, 0.2},
                      {{0, 1}, {1, 0}, {0, 1}, {0, 1}});
  const auto stable = BruteForceStable(inst);
  ASSERT_EQ(stable.size(), 1u);
  EXPECT_EQ(stable[0], SerialDictatorship(inst));
  EXPECT_EQ(stable[0], Assignment({0, 1, 0, 1}));
}

TEST(BruteForceStableTest, UniqueAndEqualToSerialDictatorshipOnRandom) {
  Rng rng(20260101);
  for (int t = 0; t < 300; ++t) {
    const int n = testing::UniformInt(1, 7, rng);
    const int p = testing::UniformInt(1, 3, rng);
    const Instance inst = RandomInstance(n, p, 3, rng);
    const auto stable = BruteForceStable(inst);
    ASSERT_EQ(stable.size(), 1u) << "trial " << t;
    EXPECT_EQ(stable[0], SerialDictatorship(inst)) << "trial " << t;
  }
}

TEST(BruteForceStableTest, TiedUtilitiesResolvedByIndex) {
  const Instance inst({1, 1}, {0.5, 0.5, 0.5}, {{0, 1}, {0, 1}, {0, 1}});
  const auto stable = BruteForceStable(inst);
  ASSERT_EQ(stable.size(), 1u);
  EXPECT_EQ(stable[0], Assignment({0, 1, std::nullopt}));
}

TEST(AssignmentTest, LoadsAndCapacities) {
  const Instance inst({1, 2}, {0.1, 0.2, 0.3}, {{0, 1}, {0, 1}, {1, 0}});
  const Assignment a({1, std::nullopt, 1});
  EXPECT_EQ(a.NumAssigned(), 2);
  EXPECT_EQ(a.Loads(2), (std::vector<int>{0, 2}));
  EXPECT_EQ(a.AssignedTo(1), (std::vector<int>{0, 2}));
  EXPECT_TRUE(RespectsCapacities(inst, a));
  EXPECT_FALSE(RespectsCapacities(inst, Assignment({0, 0, std::nullopt})));
}

TEST(StabilityProperty, SerialDictatorshipIsStable) {
  Rng rng(99);
  for (int t = 0; t < 200; ++t) {
    const Instance inst = RandomInstance(testing::UniformInt(1, 60, rng),
                                         testing::UniformInt(1, 6, rng), 8, rng);
    const Assignment a = SerialDictatorship(inst);
    ASSERT_TRUE(RespectsCapacities(inst, a));
    EXPECT_TRUE(VerifyStable(inst, a));
    EXPECT_EQ(a.NumAssigned(),
              std::min(inst.num_candidates(), inst.total_capacity()));
  }
}

}  // namespace
}  // namespace fairselect
