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

#ifndef FAIRSELECT_CORE_H_
#define FAIRSELECT_CORE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fairselect {

// Institutions, candidates and groups are 0-based indices throughout the
// library. Text formats that show them to people use the same indices.
using Institution = int;

// A ranking of institutions, most preferred first.
using Permutation = std::vector<int>;

// Returns true iff `ranking` holds each of 0..size-1 exactly once.
bool IsPermutation(std::span<const int> ranking);

// A centralized selection problem: every institution ranks candidates by the
// same observed utility, candidates rank institutions by their own lists.
// Immutable once built; the constructor validates and throws InputError.
class Instance {
 public:
  Instance(std::vector<int> capacities, std::vector<double> observed_utilities,
           std::vector<Permutation> preferences);

  int num_candidates() const { return static_cast<int>(utilities_.size()); }
  int num_institutions() const { return static_cast<int>(capacities_.size()); }
  int total_capacity() const { return total_capacity_; }

  std::span<const int> capacities() const { return capacities_; }
  std::span<const double> utilities() const { return utilities_; }
  std::span<const Permutation> preferences() const { return preferences_; }
  const Permutation& preference(int candidate) const {
    return preferences_[candidate];
  }

  // Position of `institution` in the candidate's list; 0 is the top choice.
  int RankOf(int candidate, Institution institution) const {
    return rank_[static_cast<std::size_t>(candidate) * capacities_.size() +
                 institution];
  }

  // True iff institutions order `a` ahead of `b`: higher observed utility,
  // ties going to the smaller candidate index.
  bool Outranks(int a, int b) const {
    return utilities_[a] > utilities_[b] ||
           (utilities_[a] == utilities_[b] && a < b);
  }

  // The sub-instance on `members` (in the given order) with new capacities.
  Instance Restrict(std::span<const int> members,
                    std::vector<int> capacities) const;

 private:
  std::vector<int> capacities_;
  std::vector<double> utilities_;
  std::vector<Permutation> preferences_;
  std::vector<int> rank_;
  int total_capacity_ = 0;
};

// Candidate indices in decreasing observed utility, ties by ascending index.
std::vector<int> OrderByUtility(const Instance& instance);

// True (latent) utilities that accompany an Instance.
struct LatentProfile {
  std::vector<double> latent_utilities;

  int size() const { return static_cast<int>(latent_utilities.size()); }
};

// Disjoint group membership, labels in [0, num_groups). Group 0 is the
// advantaged group by convention.
class GroupLabels {
 public:
  GroupLabels(std::vector<int> labels, int num_groups);

  int size() const { return static_cast<int>(labels_.size()); }
  int num_groups() const { return num_groups_; }
  int group_of(int candidate) const { return labels_[candidate]; }
  std::span<const int> labels() const { return labels_; }

  std::vector<int> GroupSizes() const;
  // Candidates of `group` in ascending index order.
  std::vector<int> Members(int group) const;

 private:
  std::vector<int> labels_;
  int num_groups_;
};

// Partial map candidate -> institution. Unassigned is an empty optional,
// never a sentinel institution id.
class Assignment {
 public:
  explicit Assignment(int num_candidates) : slots_(num_candidates) {}
  explicit Assignment(std::vector<std::optional<Institution>> slots)
      : slots_(std::move(slots)) {}

  int size() const { return static_cast<int>(slots_.size()); }
  const std::optional<Institution>& operator[](int candidate) const {
    return slots_[candidate];
  }
  void Assign(int candidate, Institution institution) {
    slots_[candidate] = institution;
  }
  void Unassign(int candidate) { slots_[candidate].reset(); }
  bool IsAssigned(int candidate) const { return slots_[candidate].has_value(); }

  int NumAssigned() const;
  // Number of candidates held by each of `num_institutions` institutions.
  std::vector<int> Loads(int num_institutions) const;
  // Candidates held by `institution`, ascending.
  std::vector<int> AssignedTo(Institution institution) const;

  std::span<const std::optional<Institution>> slots() const { return slots_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::optional<Institution>> slots_;
};

// True iff every institution holds at most its capacity.
bool RespectsCapacities(const Instance& instance, const Assignment& assignment);

// Stability under the common ranking: no candidate i and institution j that
// i prefers to its assignment (unassigned ranks below every institution)
// where j has a vacant slot or holds someone i outranks. Throws InputError on
// a length mismatch or a capacity violation.
bool VerifyStable(const Instance& instance, const Assignment& assignment);

inline constexpr int kOracleMaxCandidates = 8;
inline constexpr int kOracleMaxInstitutions = 4;

// Every capacity-respecting assignment of exactly min(n, K) candidates that
// passes VerifyStable, by exhaustive enumeration. Throws SizeError beyond
// kOracleMaxCandidates / kOracleMaxInstitutions.
std::vector<Assignment> BruteForceStable(const Instance& instance);

}  // namespace fairselect

#endif  // FAIRSELECT_CORE_H_
