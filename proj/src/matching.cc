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

#include "fairselect/matching.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "fairselect/errors.h"

namespace fairselect {
namespace {

// Reserve sizes derived from fractional totals such as alpha * K are
// floored; the tolerance keeps 0.3 * 100 at 30.
constexpr double kFloorTolerance = 1e-9;

void CheckGroups(const Instance& instance, const GroupLabels& groups,
                 const char* what) {
  if (groups.size() != instance.num_candidates()) {
    throw InputError(std::string(what) + ": group labels cover " +
                     std::to_string(groups.size()) + " candidates, instance has " +
                     std::to_string(instance.num_candidates()));
  }
  if (groups.num_groups() < 2) {
    throw InputError(std::string(what) + ": needs at least 2 groups");
  }
}

void CheckAlpha(double alpha, const char* what) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InputError(std::string(what) + ": alpha must lie in [0, 1], got " +
                     std::to_string(alpha));
  }
}

// Most preferred institution of `candidate` with remaining[j] > 0.
std::optional<Institution> BestVacant(const Instance& instance, int candidate,
                                      std::span<const int> remaining) {
  for (Institution j : instance.preference(candidate)) {
    if (remaining[j] > 0) return j;
  }
  return std::nullopt;
}

// Serial dictatorship over `order` (already sorted by the common ranking)
// against the capacity vector `remaining`, which is consumed.
void GreedyFill(const Instance& instance, std::span<const int> order,
                std::vector<int>& remaining, Assignment& out) {
  int vacant = std::accumulate(remaining.begin(), remaining.end(), 0);
  for (int i : order) {
    if (vacant == 0) break;
    if (auto j = BestVacant(instance, i, remaining)) {
      out.Assign(i, *j);
      --remaining[*j];
      --vacant;
    }
  }
}

}  // namespace

std::vector<int> ProportionalQuotas(double total,
                                    std::span<const int> group_sizes) {
  if (!(total >= 0.0) || !std::isfinite(total)) {
    throw InputError("quotas: total must be finite and >= 0");
  }
  const auto slots =
      static_cast<std::int64_t>(std::floor(total + kFloorTolerance));
  std::int64_t population = 0;
  for (int s : group_sizes) {
    if (s < 0) throw InputError("quotas: negative group size");
    population += s;
  }
  const std::size_t g = group_sizes.size();
  std::vector<int> quotas(g, 0);
  if (population == 0 || slots == 0) return quotas;

  // Exact integer arithmetic: share_j = slots * n_j / population.
  std::vector<std::int64_t> remainder(g);
  std::int64_t assigned = 0;
  for (std::size_t j = 0; j < g; ++j) {
    const std::int64_t numerator = slots * group_sizes[j];
    quotas[j] = static_cast<int>(numerator / population);
    remainder[j] = numerator % population;
    assigned += quotas[j];
  }
  std::vector<std::size_t> order(g);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainder[a] > remainder[b];
  });
  for (std::size_t k = 0; assigned < slots; ++k, ++assigned) {
    ++quotas[order[k]];
  }
  return quotas;
}

std::vector<int> SelectTopPerGroup(const Instance& instance,
                                   const GroupLabels& groups,
                                   std::span<const int> quotas) {
  if (quotas.size() != static_cast<std::size_t>(groups.num_groups())) {
    throw InputError("select_top_per_group: one quota per group required");
  }
  const std::vector<int> sizes = groups.GroupSizes();
  for (int g = 0; g < groups.num_groups(); ++g) {
    if (quotas[g] > sizes[g]) {
      throw InfeasibleError("group " + std::to_string(g) + " has " +
                            std::to_string(sizes[g]) +
                            " candidates but a quota of " +
                            std::to_string(quotas[g]));
    }
  }
  std::vector<int> taken(groups.num_groups(), 0);
  std::vector<int> selected;
  for (int i : OrderByUtility(instance)) {
    const int g = groups.group_of(i);
    if (taken[g] < quotas[g]) {
      ++taken[g];
      selected.push_back(i);
    }
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

Assignment SerialDictatorship(const Instance& instance) {
  Assignment out(instance.num_candidates());
  std::vector<int> remaining(instance.capacities().begin(),
                             instance.capacities().end());
  const std::vector<int> order = OrderByUtility(instance);
  GreedyFill(instance, order, remaining, out);
  return out;
}

Assignment GroupConstrained(const Instance& instance,
                            const GroupLabels& groups) {
  CheckGroups(instance, groups, "group_constrained");
  const int total =
      std::min(instance.num_candidates(), instance.total_capacity());
  const std::vector<int> sizes = groups.GroupSizes();
  const std::vector<int> quotas = ProportionalQuotas(total, sizes);
  const std::vector<int> selected = SelectTopPerGroup(instance, groups, quotas);

  std::vector<bool> is_selected(instance.num_candidates(), false);
  for (int i : selected) is_selected[i] = true;
  std::vector<int> order;
  order.reserve(selected.size());
  for (int i : OrderByUtility(instance)) {
    if (is_selected[i]) order.push_back(i);
  }
  Assignment out(instance.num_candidates());
  std::vector<int> remaining(instance.capacities().begin(),
                             instance.capacities().end());
  GreedyFill(instance, order, remaining, out);
  return out;
}

Assignment InstitutionWise(const Instance& instance,
                           const GroupLabels& groups) {
  CheckGroups(instance, groups, "institution_wise");
  const int p = instance.num_institutions();
  const std::vector<int> sizes = groups.GroupSizes();
  // shares[l][g]: institution l's slots reserved for group g.
  std::vector<std::vector<int>> shares(p);
  for (int l = 0; l < p; ++l) {
    shares[l] = ProportionalQuotas(instance.capacities()[l], sizes);
  }

  Assignment out(instance.num_candidates());
  for (int g = 0; g < groups.num_groups(); ++g) {
    const std::vector<int> members = groups.Members(g);
    std::vector<int> capacities(p);
    for (int l = 0; l < p; ++l) capacities[l] = shares[l][g];
    const Instance sub = instance.Restrict(members, std::move(capacities));
    const Assignment sub_assignment = SerialDictatorship(sub);
    for (int k = 0; k < sub.num_candidates(); ++k) {
      if (sub_assignment[k]) out.Assign(members[k], *sub_assignment[k]);
    }
  }
  return out;
}

Assignment RelaxedGroup(const Instance& instance, const GroupLabels& groups,
                        double alpha) {
  CheckAlpha(alpha, "relaxed_group");
  CheckGroups(instance, groups, "relaxed_group");
  const int total_capacity = instance.total_capacity();
  std::vector<int> reserve =
      ProportionalQuotas(alpha * total_capacity, groups.GroupSizes());
  int pool = total_capacity -
             std::accumulate(reserve.begin(), reserve.end(), 0);

  Assignment out(instance.num_candidates());
  std::vector<int> remaining(instance.capacities().begin(),
                             instance.capacities().end());
  for (int i : OrderByUtility(instance)) {
    const int g = groups.group_of(i);
    if (reserve[g] == 0 && pool == 0) continue;
    const auto j = BestVacant(instance, i, remaining);
    if (!j) break;  // Every institution is full.
    out.Assign(i, *j);
    --remaining[*j];
    if (reserve[g] > 0) {
      --reserve[g];
    } else {
      --pool;
    }
  }
  return out;
}

Assignment RelaxedInstitution(const Instance& instance,
                              const GroupLabels& groups, double alpha) {
  CheckAlpha(alpha, "relaxed_institution");
  CheckGroups(instance, groups, "relaxed_institution");
  const int p = instance.num_institutions();
  const std::vector<int> sizes = groups.GroupSizes();
  // reserve[l][g] and open[l] partition institution l's capacity.
  std::vector<std::vector<int>> reserve(p);
  std::vector<int> open(p);
  for (int l = 0; l < p; ++l) {
    const int k = instance.capacities()[l];
    reserve[l] = ProportionalQuotas(alpha * k, sizes);
    open[l] = k - std::accumulate(reserve[l].begin(), reserve[l].end(), 0);
  }

  Assignment out(instance.num_candidates());
  for (int i : OrderByUtility(instance)) {
    const int g = groups.group_of(i);
    for (Institution l : instance.preference(i)) {
      if (reserve[l][g] > 0) {
        --reserve[l][g];
      } else if (open[l] > 0) {
        --open[l];
      } else {
        continue;
      }
      out.Assign(i, l);
      break;
    }
  }
  return out;
}

std::string_view PolicyName(ConstraintPolicy::Kind kind) {
  switch (kind) {
    case ConstraintPolicy::Kind::kUnconstrained:
      return "st";
    case ConstraintPolicy::Kind::kGroupWise:
      return "group";
    case ConstraintPolicy::Kind::kInstitutionWise:
      return "inst_wise";
    case ConstraintPolicy::Kind::kRelaxedGroup:
      return "relaxed_group";
    case ConstraintPolicy::Kind::kRelaxedInstitution:
      return "relaxed_inst";
  }
  return "unknown";
}

ConstraintPolicy::Kind ParsePolicyKind(std::string_view name) {
  using Kind = ConstraintPolicy::Kind;
  for (Kind kind : {Kind::kUnconstrained, Kind::kGroupWise,
                    Kind::kInstitutionWise, Kind::kRelaxedGroup,
                    Kind::kRelaxedInstitution}) {
    if (PolicyName(kind) == name) return kind;
  }
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (expected st, group, inst_wise, relaxed_group or "
                    "relaxed_inst)");
}

Assignment Allocate(const ConstraintPolicy& policy, const Instance& instance,
                    const GroupLabels& groups) {
  switch (policy.kind) {
    case ConstraintPolicy::Kind::kUnconstrained:
      return SerialDictatorship(instance);
    case ConstraintPolicy::Kind::kGroupWise:
      return GroupConstrained(instance, groups);
    case ConstraintPolicy::Kind::kInstitutionWise:
      return InstitutionWise(instance, groups);
    case ConstraintPolicy::Kind::kRelaxedGroup:
      return RelaxedGroup(instance, groups, policy.alpha);
    case ConstraintPolicy::Kind::kRelaxedInstitution:
      return RelaxedInstitution(instance, groups, policy.alpha);
  }
  throw InputError("allocate: unknown policy");
}

}  // namespace fairselect
