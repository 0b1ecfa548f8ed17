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

#ifndef FAIRSELECT_METRICS_H_
#define FAIRSELECT_METRICS_H_

#include <span>
#include <vector>

#include "fairselect/core.h"

namespace fairselect {

// Per-group fractions and their min/max ratio. A ratio over all-zero
// fractions is 1: no group is worse off than another.
struct GroupFairness {
  std::vector<double> fractions;
  double ratio = 1.0;
};

// min / max of `values`, 1 when the maximum is 0.
double MinMaxRatio(std::span<const double> values);

// Latent utility of the selected candidates over the sum of the top
// `total_capacity` latent utilities. Throws InputError if total_capacity
// exceeds the number of candidates.
double UtilityRatio(const Assignment& assignment, const LatentProfile& latent,
                    int total_capacity);

// Fraction of each group selected, and R = min/max. Throws InputError with
// fewer than 2 groups or an empty group.
GroupFairness RepresentationalFairness(const Assignment& assignment,
                                       const GroupLabels& groups);

// Fraction of each group placed within the first `ell` entries of its own
// preference list, and P(ell) = min/max. Throws InputError unless
// 1 <= ell <= p.
GroupFairness PreferenceFairness(const Assignment& assignment,
                                 const Instance& instance,
                                 const GroupLabels& groups, int ell);

struct TopChoiceFairness {
  int ell = 1;
  GroupFairness fairness;
};

struct MetricsReport {
  double utility_ratio = 1.0;
  GroupFairness representation;
  std::vector<TopChoiceFairness> preference;
};

MetricsReport ComputeMetrics(const Instance& instance,
                             const LatentProfile& latent,
                             const GroupLabels& groups,
                             const Assignment& assignment,
                             std::span<const int> ells);

}  // namespace fairselect

#endif  // FAIRSELECT_METRICS_H_
