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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fairselect/errors.h"

namespace fairselect {

bool IsPermutation(std::span<const int> ranking) {
  std::vector<bool> seen(ranking.size(), false);
  for (int x : ranking) {
    if (x < 0 || static_cast<std::size_t>(x) >= ranking.size() || seen[x]) {
      return false;
    }
    seen[x] = true;
  }
  return true;
}

Instance::Instance(std::vector<int> capacities,
                   std::vector<double> observed_utilities,
                   std::vector<Permutation> preferences)
    : capacities_(std::move(capacities)),
      utilities_(std::move(observed_utilities)),
      preferences_(std::move(preferences)) {
  if (utilities_.size() != preferences_.size()) {
    throw InputError("instance: " + std::to_string(utilities_.size()) +
                     " utilities but " + std::to_string(preferences_.size()) +
                     " preference lists");
  }
  for (int k : capacities_) {
    if (k < 0) throw InputError("instance: negative capacity");
    total_capacity_ += k;
  }
  const std::size_t p = capacities_.size();
  rank_.assign(preferences_.size() * p, 0);
  for (std::size_t i = 0; i < preferences_.size(); ++i) {
    const Permutation& sigma = preferences_[i];
    if (sigma.size() != p || !IsPermutation(sigma)) {
      throw InputError("instance: preference list of candidate " +
                       std::to_string(i) + " is not a permutation of " +
                       std::to_string(p) + " institutions");
    }
    for (std::size_t r = 0; r < p; ++r) rank_[i * p + sigma[r]] = r;
  }
  // Finite is all that is checked here: the implicit variance bias model can
  // legitimately produce negative observed utilities.
  for (double u : utilities_) {
    if (!std::isfinite(u)) throw InputError("instance: non-finite utility");
  }
}

Instance Instance::Restrict(std::span<const int> members,
                            std::vector<int> capacities) const {
  if (capacities.size() != capacities_.size()) {
    throw InputError("restrict: capacity vector has wrong length");
  }
  std::vector<double> utilities;
  std::vector<Permutation> preferences;
  utilities.reserve(members.size());
  preferences.reserve(members.size());
  for (int i : members) {
    utilities.push_back(utilities_.at(i));
    preferences.push_back(preferences_.at(i));
  }
  return Instance(std::move(capacities), std::move(utilities),
                  std::move(preferences));
}

std::vector<int> OrderByUtility(const Instance& instance) {
  std::vector<int> order(instance.num_candidates());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&instance](int a, int b) {
    return instance.Outranks(a, b);
  });
  return order;
}

GroupLabels::GroupLabels(std::vector<int> labels, int num_groups)
    : labels_(std::move(labels)), num_groups_(num_groups) {
  if (num_groups_ < 1) throw InputError("group labels: need at least 1 group");
  for (int g : labels_) {
    if (g < 0 || g >= num_groups_) {
      throw InputError("group labels: label " + std::to_string(g) +
                       " outside [0, " + std::to_string(num_groups_) + ")");
    }
  }
}

std::vector<int> GroupLabels::GroupSizes() const {
  std::vector<int> sizes(num_groups_, 0);
  for (int g : labels_) ++sizes[g];
  return sizes;
}

std::vector<int> GroupLabels::Members(int group) const {
  std::vector<int> members;
  for (int i = 0; i < size(); ++i) {
    if (labels_[i] == group) members.push_back(i);
  }
  return members;
}

int Assignment::NumAssigned() const {
  return static_cast<int>(std::count_if(
      slots_.begin(), slots_.end(), [](const auto& s) { return s.has_value(); }));
}

std::vector<int> Assignment::Loads(int num_institutions) const {
  std::vector<int> loads(num_institutions, 0);
  for (const auto& s : slots_) {
    if (s) ++loads.at(*s);
  }
  return loads;
}

std::vector<int> Assignment::AssignedTo(Institution institution) const {
  std::vector<int> members;
  for (int i = 0; i < size(); ++i) {
    if (slots_[i] == institution) members.push_back(i);
  }
  return members;
}

bool RespectsCapacities(const Instance& instance,
                        const Assignment& assignment) {
  const int p = instance.num_institutions();
  std::vector<int> loads(p, 0);
  for (const auto& s : assignment.slots()) {
    if (!s) continue;
    if (*s < 0 || *s >= p) return false;
    ++loads[*s];
  }
  for (int j = 0; j < p; ++j) {
    if (loads[j] > instance.capacities()[j]) return false;
  }
  return true;
}

bool VerifyStable(const Instance& instance, const Assignment& assignment) {
  const int n = instance.num_candidates();
  const int p = instance.num_institutions();
  if (assignment.size() != n) {
    throw InputError("verify_stable: assignment covers " +
                     std::to_string(assignment.size()) + " candidates, instance has " +
                     std::to_string(n));
  }
  if (!RespectsCapacities(instance, assignment)) {
    throw InputError("verify_stable: assignment exceeds a capacity");
  }

  // Each institution's weakest occupant; an institution with a vacancy
  // accepts anyone.
  std::vector<int> loads = assignment.Loads(p);
  std::vector<std::optional<int>> weakest(p);
  for (int i = 0; i < n; ++i) {
    if (!assignment[i]) continue;
    auto& w = weakest[*assignment[i]];
    if (!w || instance.Outranks(*w, i)) w = i;
  }

  for (int i = 0; i < n; ++i) {
    const Permutation& sigma = instance.preference(i);
    const int current_rank =
        assignment[i] ? instance.RankOf(i, *assignment[i]) : p;
    for (int r = 0; r < current_rank; ++r) {
      const Institution j = sigma[r];
      if (instance.capacities()[j] == 0) continue;
      if (loads[j] < instance.capacities()[j]) return false;
      if (weakest[j] && instance.Outranks(i, *weakest[j])) return false;
    }
  }
  return true;
}

std::vector<Assignment> BruteForceStable(const Instance& instance) {
  const int n = instance.num_candidates();
  const int p = instance.num_institutions();
  if (n > kOracleMaxCandidates || p > kOracleMaxInstitutions) {
    throw SizeError("brute_force_stable: instance with n=" + std::to_string(n) +
                    ", p=" + std::to_string(p) + " exceeds oracle scale (n <= " +
                    std::to_string(kOracleMaxCandidates) + ", p <= " +
                    std::to_string(kOracleMaxInstitutions) + ")");
  }
  const int target = std::min(n, instance.total_capacity());

  // Odometer over {unassigned, 0..p-1}^n; digit 0 encodes unassigned.
  std::vector<int> digits(n, 0);
  std::vector<Assignment> stable;
  while (true) {
    Assignment candidate(n);
    int assigned = 0;
    for (int i = 0; i < n; ++i) {
      if (digits[i] > 0) {
        candidate.Assign(i, digits[i] - 1);
        ++assigned;
      }
    }
    if (assigned == target && RespectsCapacities(instance, candidate) &&
        VerifyStable(instance, candidate)) {
      stable.push_back(std::move(candidate));
    }
    int pos = 0;
    while (pos < n && digits[pos] == p) digits[pos++] = 0;
    if (pos == n) break;
    ++digits[pos];
  }
  return stable;
}

}  // namespace fairselect
