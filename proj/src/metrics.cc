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

#include <algorithm>
#include <functional>
#include <string>

#include "fairselect/errors.h"

namespace fairselect {
namespace {

std::vector<int> CheckedGroupSizes(const Assignment& assignment,
                                   const GroupLabels& groups) {
  if (groups.size() != assignment.size()) {
    throw InputError("metrics: group labels and assignment differ in length");
  }
  if (groups.num_groups() < 2) {
    throw InputError("metrics: fairness needs at least 2 groups");
  }
  std::vector<int> sizes = groups.GroupSizes();
  for (int g = 0; g < groups.num_groups(); ++g) {
    if (sizes[g] == 0) {
      throw InputError("metrics: group " + std::to_string(g) + " is empty");
    }
  }
  return sizes;
}

GroupFairness FromCounts(std::span<const int> counts,
                         std::span<const int> sizes) {
  GroupFairness out;
  out.fractions.reserve(counts.size());
  for (std::size_t g = 0; g < counts.size(); ++g) {
    out.fractions.push_back(static_cast<double>(counts[g]) / sizes[g]);
  }
  out.ratio = MinMaxRatio(out.fractions);
  return out;
}

}  // namespace

double MinMaxRatio(std::span<const double> values) {
  if (values.empty()) return 1.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi > 0.0 ? *lo / *hi : 1.0;
}

double UtilityRatio(const Assignment& assignment, const LatentProfile& latent,
                    int total_capacity) {
  const int n = latent.size();
  if (assignment.size() != n) {
    throw InputError("utility_ratio: assignment and latent profile differ in "
                     "length");
  }
  if (total_capacity < 0 || total_capacity > n) {
    throw InputError("utility_ratio: K=" + std::to_string(total_capacity) +
                     " exceeds n=" + std::to_string(n));
  }
  double realized = 0.0;
  for (int i = 0; i < n; ++i) {
    if (assignment.IsAssigned(i)) realized += latent.latent_utilities[i];
  }
  std::vector<double> sorted = latent.latent_utilities;
  std::nth_element(sorted.begin(), sorted.begin() + total_capacity,
                   sorted.end(), std::greater<>());
  double best = 0.0;
  for (int k = 0; k < total_capacity; ++k) best += sorted[k];
  if (best == 0.0) return realized == 0.0 ? 1.0 : 0.0;
  return realized / best;
}

GroupFairness RepresentationalFairness(const Assignment& assignment,
                                       const GroupLabels& groups) {
  const std::vector<int> sizes = CheckedGroupSizes(assignment, groups);
  std::vector<int> counts(groups.num_groups(), 0);
  for (int i = 0; i < assignment.size(); ++i) {
    if (assignment.IsAssigned(i)) ++counts[groups.group_of(i)];
  }
  return FromCounts(counts, sizes);
}

GroupFairness PreferenceFairness(const Assignment& assignment,
                                 const Instance& instance,
                                 const GroupLabels& groups, int ell) {
  if (ell < 1 || ell > instance.num_institutions()) {
    throw InputError("preference_fairness: ell=" + std::to_string(ell) +
                     " outside [1, " +
                     std::to_string(instance.num_institutions()) + "]");
  }
  if (assignment.size() != instance.num_candidates()) {
    throw InputError("preference_fairness: assignment and instance differ in "
                     "length");
  }
  const std::vector<int> sizes = CheckedGroupSizes(assignment, groups);
  std::vector<int> counts(groups.num_groups(), 0);
  for (int i = 0; i < assignment.size(); ++i) {
    if (assignment[i] && instance.RankOf(i, *assignment[i]) < ell) {
      ++counts[groups.group_of(i)];
    }
  }
  return FromCounts(counts, sizes);
}

MetricsReport ComputeMetrics(const Instance& instance,
                             const LatentProfile& latent,
                             const GroupLabels& groups,
                             const Assignment& assignment,
                             std::span<const int> ells) {
  MetricsReport report;
  // With fewer candidates than slots the best selection is everyone.
  report.utility_ratio = UtilityRatio(
      assignment, latent,
      std::min(instance.num_candidates(), instance.total_capacity()));
  report.representation = RepresentationalFairness(assignment, groups);
  for (int ell : ells) {
    report.preference.push_back(
        {ell, PreferenceFairness(assignment, instance, groups, ell)});
  }
  return report;
}

}  // namespace fairselect
