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

#ifndef FAIRSELECT_MATCHING_H_
#define FAIRSELECT_MATCHING_H_

#include <span>
#include <string_view>
#include <vector>

#include "fairselect/core.h"

namespace fairselect {

// Splits floor(total) slots across groups in proportion to their sizes:
// every group gets the floor of its exact share, then leftover slots go one
// per group by decreasing fractional remainder, ties to the smaller group.
// The result sums to floor(total) and each entry is within 1 of its share.
std::vector<int> ProportionalQuotas(double total,
                                    std::span<const int> group_sizes);

// The top quotas[g] candidates of each group g by observed utility, returned
// in ascending index order. Throws InfeasibleError when a group has fewer
// members than its quota.
std::vector<int> SelectTopPerGroup(const Instance& instance,
                                   const GroupLabels& groups,
                                   std::span<const int> quotas);

// Unconstrained stable assignment: candidates in decreasing observed utility
// each take their most preferred institution with a vacant slot.
Assignment SerialDictatorship(const Instance& instance);

// Selects the top ProportionalQuotas(min(n, K)) candidates per group, then
// runs SerialDictatorship on the union with the original capacities.
Assignment GroupConstrained(const Instance& instance, const GroupLabels& groups);

// Splits each institution's capacity across groups with ProportionalQuotas
// and runs SerialDictatorship independently inside every group.
Assignment InstitutionWise(const Instance& instance, const GroupLabels& groups);

// Reserves ProportionalQuotas(alpha * K) selections per group and leaves the
// rest of K in a shared pool. A candidate is admitted while its group reserve
// or the pool has room (reserve charged first) and takes its best institution
// with a vacant slot. alpha = 0 is SerialDictatorship, alpha = 1 is
// GroupConstrained.
Assignment RelaxedGroup(const Instance& instance, const GroupLabels& groups,
                        double alpha);

// Reserves ProportionalQuotas(alpha * k_l) slots per group at every
// institution; the remainder of k_l is open to all groups. A candidate takes
// its best institution with either a free slot reserved for its group
// (charged first) or a free open slot. Reserves are never released to other
// groups. alpha = 0 is SerialDictatorship, alpha = 1 is InstitutionWise.
Assignment RelaxedInstitution(const Instance& instance,
                              const GroupLabels& groups, double alpha);

struct ConstraintPolicy {
  enum class Kind {
    kUnconstrained,
    kGroupWise,
    kInstitutionWise,
    kRelaxedGroup,
    kRelaxedInstitution,
  };
  Kind kind = Kind::kUnconstrained;
  double alpha = 1.0;  // Used by the relaxed kinds only.
};

// Short names used in configs and output: "st", "group", "inst_wise",
// "relaxed_group", "relaxed_inst".
std::string_view PolicyName(ConstraintPolicy::Kind kind);
// Throws ConfigError on an unknown name.
ConstraintPolicy::Kind ParsePolicyKind(std::string_view name);

// Dispatches to the algorithm `policy` names. Throws InputError for an alpha
// outside [0, 1].
Assignment Allocate(const ConstraintPolicy& policy, const Instance& instance,
                    const GroupLabels& groups);

}  // namespace fairselect

#endif  // FAIRSELECT_MATCHING_H_
