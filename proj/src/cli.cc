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

#include "fairselect/cli.h"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ios>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairselect/core.h"
#include "fairselect/errors.h"
#include "fairselect/harness.h"
#include "fairselect/ingest.h"
#include "fairselect/matching.h"
#include "fairselect/rng.h"
#include "fairselect/sampling.h"
#include "fairselect/theory.h"

namespace fairselect {
namespace {

std::string Fmt(double value, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

struct SimulateArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> iterations;
  std::string out_path;
  std::string format = "csv";
  int threads = 1;
};

struct IngestArgs {
  std::string candidates_path;
  std::string programs_path;
  std::string group_column = "gender";
  double cutoff = 1000.0;
  int rank_limit = 0;
};

struct TheoryArgs {
  double beta = 1.0;
  double n1 = 0.0;
  double n2 = 0.0;
  double total_capacity = 0.0;
};

struct OracleArgs {
  int n = 6;
  int p = 3;
  int trials = 200;
  std::optional<std::uint64_t> seed;
};

std::optional<std::uint64_t> EnvSeed() {
  const char* raw = std::getenv("FAIRSELECT_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || raw[0] == '-') {
    throw ConfigError("FAIRSELECT_SEED must be a non-negative integer");
  }
  return v;
}

int RunSimulate(const SimulateArgs& args, std::ostream& out,
                std::ostream& err) {
  ExperimentConfig config = LoadConfig(args.config_path);
  if (args.seed) {
    config.seed = *args.seed;
  } else if (!config.has_seed) {
    if (const auto env = EnvSeed()) config.seed = *env;
  }
  if (args.iterations) {
    if (*args.iterations < 1) throw ConfigError("--iterations must be >= 1");
    config.iterations = *args.iterations;
  }
  const OutputFormat format =
      args.format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  const ExperimentResult result = RunExperiment(config, args.threads);
  if (args.out_path.empty()) {
    out << (format == OutputFormat::kCsv ? ResultToCsv(result)
                                         : ResultToJson(result));
  } else {
    EmitResults(result, format, args.out_path);
  }
  for (const auto& point : result.points) {
    for (const auto& alg : point.algorithms) {
      if (!alg.error.empty()) {
        err << "error at " << result.sweep_axis << "="
            << Fmt(point.sweep_value, 12) << ", " << alg.algorithm << ": "
            << alg.error << "\n";
      }
    }
  }
  return result.HasErrors() ? kExitRuntimeError : kExitOk;
}

int RunIngest(const IngestArgs& args, std::ostream& out) {
  const CandidateTable table =
      LoadCandidates(args.candidates_path, args.group_column);
  const CentralRanking ranking =
      BuildCentralRanking(LoadPrograms(args.programs_path), args.cutoff);
  const CandidatePool pool = BuildCandidatePool(table, args.rank_limit);

  int total = 0;
  for (int k : ranking.capacities) total += k;
  out << "candidates: " << table.records.size() << " loaded, "
      << pool.rows.size() << " in pool\n";
  out << "group column: " << args.group_column << "\n";
  const auto sizes = pool.groups.GroupSizes();
  std::vector<double> sums(sizes.size(), 0.0);
  for (int i = 0; i < pool.groups.size(); ++i) {
    sums[pool.groups.group_of(i)] += pool.scores[i];
  }
  for (std::size_t g = 0; g < sizes.size(); ++g) {
    out << "  group " << g << " = '" << table.group_names[g]
        << "': " << sizes[g] << " candidates, mean score "
        << (sizes[g] > 0 ? Fmt(sums[g] / sizes[g]) : std::string("n/a"))
        << "\n";
  }
  out << "programs: " << ranking.program_ids.size()
      << " retained, total capacity " << total << "\n";
  out << "  first: " << ranking.program_ids.front() << " (closing "
      << ranking.closing_ranks.front() << ")\n";
  out << "  last: " << ranking.program_ids.back() << " (closing "
      << ranking.closing_ranks.back() << ")\n";
  for (const auto& [a, b] : ranking.tie_breaks) {
    out << "  tie in closing rank broken by program_id: " << a << " before "
        << b << "\n";
  }
  return kExitOk;
}

int RunTheory(const TheoryArgs& args, std::ostream& out) {
  const TheoryParams params{args.n1, args.n2, args.total_capacity, args.beta};
  const auto [a1, a2] = PredictedAlphas(params);
  const UniformPrediction pred = PredictedMetricsUniform(params);
  out << "alpha1=" << Fmt(a1) << "\n";
  out << "alpha2=" << Fmt(a2) << "\n";
  out << "R_pred=" << Fmt(pred.representation) << "\n";
  out << "U_pred=" << Fmt(pred.utility_ratio) << "\n";
  out << "P_upper=" << Fmt(pred.preference_upper) << "\n";
  if (args.n1 == args.n2 && args.n1 == args.total_capacity) {
    out << "U_limit=" << Fmt(SymmetricUtilityRatio(args.beta)) << "\n";
  }
  if (args.beta <= 1.0) {
    const LogConcaveBound bound = LogConcaveUpperBound(args.beta);
    out << "logconcave_bound=" << Fmt(bound.value)
        << (bound.applies ? "" : " (not a valid bound for beta > 0.5)") << "\n";
  }
  out << "band=+/-" << Fmt(UncertaintyBand(args.n1 + args.n2)) << "\n";
  return kExitOk;
}

int RunOracle(const OracleArgs& args, std::ostream& out) {
  if (args.n < 1 || args.n > kOracleMaxCandidates || args.p < 1 ||
      args.p > kOracleMaxInstitutions) {
    throw SizeError("oracle: need 1 <= n <= " +
                    std::to_string(kOracleMaxCandidates) + " and 1 <= p <= " +
                    std::to_string(kOracleMaxInstitutions));
  }
  if (args.trials < 1) throw ConfigError("--trials must be >= 1");
  std::uint64_t seed = 0;
  if (args.seed) {
    seed = *args.seed;
  } else if (const auto env = EnvSeed()) {
    seed = *env;
  }
  int unique = 0;
  int match = 0;
  for (int t = 0; t < args.trials; ++t) {
    Rng rng = KeyedStream(seed, 0, t);
    std::uniform_int_distribution<int> cap(0, 3);
    std::vector<int> capacities(args.p);
    for (int& k : capacities) k = cap(rng);
    if (std::all_of(capacities.begin(), capacities.end(),
                    [](int k) { return k == 0; })) {
      capacities[0] = 1;
    }
    std::vector<double> utilities(args.n);
    for (double& u : utilities) u = UniformUnit(rng);
    std::vector<Permutation> prefs;
    const MallowsModel uniform(IdentityRanking(args.p), 1.0);
    for (int i = 0; i < args.n; ++i) prefs.push_back(SampleMallows(uniform, rng));
    const Instance instance(capacities, utilities, prefs);
    const auto stable = BruteForceStable(instance);
    if (stable.size() == 1) {
      ++unique;
      if (stable.front() == SerialDictatorship(instance)) ++match;
    }
  }
  out << unique << "/" << args.trials << " unique; " << match << "/"
      << args.trials << " match A_st\n";
  return match == args.trials ? kExitOk : kExitRuntimeError;
}

}  // namespace

int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Candidate-to-institution selection under biased utilities.",
               "fairselect"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Run a Monte Carlo experiment from a JSON config.");
  simulate->add_option("config", sim.config_path, "Config file")->required();
  simulate->add_option("--seed", sim.seed, "Master seed (overrides config)");
  simulate->add_option("--iterations", sim.iterations,
                       "Iterations per sweep point (overrides config)");
  simulate->add_option("--out", sim.out_path, "Output file (default stdout)");
  simulate->add_option("--format", sim.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--threads", sim.threads, "Worker threads")
      ->check(CLI::Range(1, 256));

  IngestArgs ing;
  auto* ingest = app.add_subcommand(
      "ingest", "Load candidate and program files and summarize the instance.");
  ingest->add_option("candidates", ing.candidates_path, "Candidate CSV")
      ->required();
  ingest->add_option("programs", ing.programs_path, "Program CSV")->required();
  ingest->add_option("--group-column", ing.group_column,
                     "Protected attribute column");
  ingest->add_option("--cutoff", ing.cutoff, "Largest closing rank retained");
  ingest->add_option("--rank-limit", ing.rank_limit,
                     "Keep only the best N candidates (0 keeps all)")
      ->check(CLI::NonNegativeNumber);

  TheoryArgs th;
  auto* theory = app.add_subcommand(
      "theory", "Closed-form predictions for uniform utilities, two groups.");
  theory->add_option("--beta", th.beta, "Bias parameter")->required();
  theory->add_option("--n1", th.n1, "Advantaged group size")->required();
  theory->add_option("--n2", th.n2, "Disadvantaged group size")->required();
  theory->add_option("--K", th.total_capacity, "Total capacity")->required();

  OracleArgs orc;
  auto* oracle = app.add_subcommand(
      "oracle", "Check uniqueness of stable assignments by enumeration.");
  oracle->add_option("--n", orc.n, "Candidates per instance");
  oracle->add_option("--p", orc.p, "Institutions per instance");
  oracle->add_option("--trials", orc.trials, "Random instances");
  oracle->add_option("--seed", orc.seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfigError;
  }

  try {
    if (*simulate) return RunSimulate(sim, out, err);
    if (*ingest) return RunIngest(ing, out);
    if (*theory) return RunTheory(th, out);
    return RunOracle(orc, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const SizeError& e) {
    err << "size error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace fairselect
