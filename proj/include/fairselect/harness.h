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

#ifndef FAIRSELECT_HARNESS_H_
#define FAIRSELECT_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairselect/bias.h"
#include "fairselect/core.h"
#include "fairselect/matching.h"
#include "fairselect/sampling.h"

namespace fairselect {

enum class SweepAxis { kBeta, kPhi, kGamma, kAlpha, kDelta };

const char* SweepAxisName(SweepAxis axis);

// Real-data source: observed scores and group labels come from the candidate
// file, institutions and the shared central ranking from the program file.
struct IngestSource {
  std::string candidates_path;
  std::string programs_path;
  std::string group_column = "gender";
  double cutoff = 1000.0;
  int rank_limit = 0;  // 0 keeps every candidate.
};

// Metric names: "U", "R", and "P<l>" for preference fairness at top-l.
struct ExperimentConfig {
  std::uint64_t seed = 0;
  bool has_seed = false;  // Whether the config file named a seed.
  int iterations = 50;
  int num_candidates = 1000;
  std::vector<int> capacities = std::vector<int>(5, 100);
  std::vector<int> group_sizes;  // Empty: two halves.
  UtilityDistribution utility = Uniform01{};
  std::optional<BiasModel> bias;
  double phi = 1.0;
  std::optional<Permutation> central_ranking;  // Empty: identity.
  std::optional<int> gamma;  // Set: group 1 gets its own central ranking.
  std::vector<ConstraintPolicy::Kind> algorithms = {
      ConstraintPolicy::Kind::kUnconstrained};
  double alpha = 1.0;
  std::vector<std::string> metrics = {"U", "R", "P1"};
  SweepAxis sweep_axis = SweepAxis::kBeta;
  std::vector<double> sweep_values = {1.0};
  // Reuse the same draws at every sweep point (common random numbers).
  bool paired = false;
  std::optional<IngestSource> ingest;
};

// Parses the JSON config; unknown keys, wrong types and invalid values throw
// ConfigError with the offending key path.
ExperimentConfig ParseConfig(const std::string& json_text);
ExperimentConfig LoadConfig(const std::string& path);

// Canonical JSON form of a config (sorted keys, defaults filled in); it is
// accepted by ParseConfig and hashed for provenance.
std::string ConfigToJson(const ExperimentConfig& config);

struct MetricSummary {
  std::string metric;
  double mean = 0.0;
  double sem = 0.0;
  int iterations = 0;

  friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

struct AlgorithmSummary {
  std::string algorithm;
  std::vector<MetricSummary> metrics;  // Config order.
  std::string error;  // Non-empty: the first draw that failed.

  friend bool operator==(const AlgorithmSummary&,
                         const AlgorithmSummary&) = default;
};

struct SweepPointResult {
  double sweep_value = 0.0;
  std::vector<AlgorithmSummary> algorithms;  // Config order.

  friend bool operator==(const SweepPointResult&,
                         const SweepPointResult&) = default;
};

struct ExperimentResult {
  std::string sweep_axis;
  std::uint64_t seed = 0;
  std::string config_hash;  // FNV-1a of the canonical config, hex.
  std::vector<SweepPointResult> points;

  bool HasErrors() const;
  friend bool operator==(const ExperimentResult&,
                         const ExperimentResult&) = default;
};

// Runs every sweep point and iteration; draw (s, i) uses KeyedStream(seed, s,
// i), or (seed, 0, i) when `paired` is set. Aggregates are independent of
// `threads`. A draw that throws marks that algorithm's cell at the sweep
// point as failed; other cells still run.
ExperimentResult RunExperiment(const ExperimentConfig& config,
                               int threads = 1);

enum class OutputFormat { kCsv, kJson };

// Long format: sweep_value,algorithm,metric,mean,sem,iterations. Failed cells
// produce no rows.
std::string ResultToCsv(const ExperimentResult& result);
std::string ResultToJson(const ExperimentResult& result);
ExperimentResult ResultFromJson(const std::string& json_text);

// Throws std::ios_base::failure if `path` cannot be written.
void EmitResults(const ExperimentResult& result, OutputFormat format,
                 const std::string& path);

// Sample mean and standard error (n - 1 denominator; 0 for a single value).
std::pair<double, double> MeanAndSem(const std::vector<double>& values);

}  // namespace fairselect

#endif  // FAIRSELECT_HARNESS_H_
