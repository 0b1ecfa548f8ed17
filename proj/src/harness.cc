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

#include "fairselect/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "fairselect/errors.h"
#include "fairselect/ingest.h"
#include "fairselect/metrics.h"
#include "fairselect/rng.h"
#include "json.hpp"

namespace fairselect {
namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config parsing.

void RejectUnknownKeys(const json& object, const std::string& where,
                       std::initializer_list<const char*> allowed) {
  if (!object.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  for (const auto& [key, value] : object.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&key](const char* a) { return key == a; })) {
      std::string list;
      for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
      throw ConfigError(where + ": unknown key '" + key + "' (allowed: " +
                        list + ")");
    }
  }
}

double GetNumber(const json& value, const std::string& where) {
  if (!value.is_number()) throw ConfigError(where + ": expected a number");
  return value.get<double>();
}

int GetInt(const json& value, const std::string& where) {
  if (!value.is_number_integer()) {
    throw ConfigError(where + ": expected an integer");
  }
  const auto v = value.get<long long>();
  if (v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max()) {
    throw ConfigError(where + ": integer out of range");
  }
  return static_cast<int>(v);
}

std::vector<int> GetIntList(const json& value, const std::string& where) {
  if (!value.is_array()) throw ConfigError(where + ": expected a list");
  std::vector<int> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(GetInt(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<double> GetNumberList(const json& value, const std::string& where) {
  if (!value.is_array()) throw ConfigError(where + ": expected a list");
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(GetNumber(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string GetString(const json& value, const std::string& where) {
  if (!value.is_string()) throw ConfigError(where + ": expected a string");
  return value.get<std::string>();
}

// A scalar applies to every group except group 0, which keeps `base`.
std::vector<double> PerGroup(const json& value, const std::string& where,
                             double base, int num_groups) {
  if (value.is_array()) {
    auto out = GetNumberList(value, where);
    if (static_cast<int>(out.size()) != num_groups) {
      throw ConfigError(where + ": expected " + std::to_string(num_groups) +
                        " values, one per group");
    }
    return out;
  }
  std::vector<double> out(num_groups, GetNumber(value, where));
  out[0] = base;
  return out;
}

UtilityDistribution ParseUtility(const json& j) {
  RejectUnknownKeys(j, "utility",
                    {"type", "mean", "std", "lower_bound", "shape", "scale"});
  if (!j.contains("type")) throw ConfigError("utility: missing 'type'");
  const std::string type = GetString(j["type"], "utility.type");
  auto forbid = [&j, &type](std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
      if (j.contains(k)) {
        throw ConfigError("utility: key '" + std::string(k) +
                          "' does not apply to type '" + type + "'");
      }
    }
  };
  UtilityDistribution dist;
  if (type == "uniform") {
    forbid({"mean", "std", "lower_bound", "shape", "scale"});
    dist = Uniform01{};
  } else if (type == "gaussian") {
    forbid({"shape", "scale"});
    TruncGaussian g;
    if (j.contains("mean")) g.mean = GetNumber(j["mean"], "utility.mean");
    if (j.contains("std")) g.std = GetNumber(j["std"], "utility.std");
    if (j.contains("lower_bound")) {
      g.lower_bound = GetNumber(j["lower_bound"], "utility.lower_bound");
    }
    dist = g;
  } else if (type == "pareto") {
    forbid({"mean", "std", "lower_bound"});
    Pareto p;
    if (j.contains("shape")) p.shape = GetNumber(j["shape"], "utility.shape");
    if (j.contains("scale")) p.scale = GetNumber(j["scale"], "utility.scale");
    dist = p;
  } else {
    throw ConfigError("utility.type: expected uniform, gaussian or pareto, "
                      "got '" + type + "'");
  }
  Validate(dist);
  return dist;
}

BiasModel ParseBias(const json& j, int num_groups) {
  RejectUnknownKeys(j, "bias", {"type", "beta", "center", "std", "delta"});
  if (!j.contains("type")) throw ConfigError("bias: missing 'type'");
  const std::string type = GetString(j["type"], "bias.type");
  auto only = [&j, &type](std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : j.items()) {
      if (key == "type") continue;
      if (std::none_of(keys.begin(), keys.end(),
                       [&key](const char* k) { return key == k; })) {
        throw ConfigError("bias: key '" + key + "' does not apply to type '" +
                          type + "'");
      }
    }
  };
  BiasModel model;
  if (type == "beta") {
    only({"beta"});
    model = BetaBias{j.contains("beta")
                         ? PerGroup(j["beta"], "bias.beta", 1.0, num_groups)
                         : std::vector<double>(num_groups, 1.0)};
  } else if (type == "noisy_beta") {
    only({"center", "beta", "std"});
    if (j.contains("center") && j.contains("beta")) {
      throw ConfigError("bias: give either 'center' or 'beta', not both");
    }
    NoisyBeta nb;
    const char* key = j.contains("beta") ? "beta" : "center";
    nb.center = j.contains(key)
                    ? PerGroup(j[key], std::string("bias.") + key, 1.0,
                               num_groups)
                    : std::vector<double>(num_groups, 1.0);
    if (j.contains("std")) nb.std = GetNumber(j["std"], "bias.std");
    model = nb;
  } else if (type == "implicit_variance") {
    only({"delta"});
    model = ImplicitVariance{
        j.contains("delta") ? PerGroup(j["delta"], "bias.delta", 0.0, num_groups)
                            : std::vector<double>(num_groups, 0.0)};
  } else {
    throw ConfigError("bias.type: expected beta, noisy_beta or "
                      "implicit_variance, got '" + type + "'");
  }
  try {
    Validate(model, num_groups);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bias: ") + e.what());
  }
  return model;
}

SweepAxis ParseAxis(const std::string& name) {
  for (SweepAxis a : {SweepAxis::kBeta, SweepAxis::kPhi, SweepAxis::kGamma,
                      SweepAxis::kAlpha, SweepAxis::kDelta}) {
    if (name == SweepAxisName(a)) return a;
  }
  throw ConfigError("sweep.axis: expected beta, phi, gamma, alpha or delta, "
                    "got '" + name + "'");
}

int MetricEll(const std::string& metric) {
  if (metric.size() < 2 || metric[0] != 'P') return 0;
  int ell = 0;
  for (std::size_t i = 1; i < metric.size(); ++i) {
    if (metric[i] < '0' || metric[i] > '9' || ell > 100000) return 0;
    ell = ell * 10 + (metric[i] - '0');
  }
  return ell;
}

json UtilityToJson(const UtilityDistribution& dist) {
  return std::visit(
      [](const auto& d) -> json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Uniform01>) {
          return {{"type", "uniform"}};
        } else if constexpr (std::is_same_v<T, TruncGaussian>) {
          return {{"type", "gaussian"}, {"mean", d.mean}, {"std", d.std},
                  {"lower_bound", d.lower_bound}};
        } else {
          return {{"type", "pareto"}, {"shape", d.shape}, {"scale", d.scale}};
        }
      },
      dist);
}

json BiasToJson(const BiasModel& model) {
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, BetaBias>) {
          return {{"type", "beta"}, {"beta", m.beta}};
        } else if constexpr (std::is_same_v<T, NoisyBeta>) {
          return {{"type", "noisy_beta"}, {"center", m.center}, {"std", m.std}};
        } else {
          return {{"type", "implicit_variance"}, {"delta", m.delta}};
        }
      },
      model);
}

std::string Fnv1aHex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Format12(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

// ---------------------------------------------------------------------------
// Running.

// Everything that is fixed for one sweep point.
struct PointSetup {
  double phi = 1.0;
  double alpha = 1.0;
  std::optional<int> gamma;
  std::optional<BiasModel> bias;
  std::string error;
};

// Inputs shared by every draw: either the synthetic shape or ingested data.
struct Population {
  std::vector<int> capacities;
  std::optional<GroupLabels> groups;
  std::optional<LatentProfile> fixed_scores;  // Ingested scores.
  Permutation central;
};

PointSetup MakePoint(const ExperimentConfig& config, int num_groups,
                     int num_institutions, double value) {
  PointSetup point{config.phi, config.alpha, config.gamma, config.bias, ""};
  try {
    switch (config.sweep_axis) {
      case SweepAxis::kBeta: {
        if (!point.bias) point.bias = BetaBias{std::vector<double>(num_groups, 1.0)};
        if (auto* b = std::get_if<BetaBias>(&*point.bias)) {
          std::fill(b->beta.begin() + 1, b->beta.end(), value);
        } else if (auto* nb = std::get_if<NoisyBeta>(&*point.bias)) {
          std::fill(nb->center.begin() + 1, nb->center.end(), value);
        } else {
          throw ConfigError("sweep axis beta needs a beta or noisy_beta bias");
        }
        break;
      }
      case SweepAxis::kDelta: {
        auto* iv = point.bias ? std::get_if<ImplicitVariance>(&*point.bias)
                              : nullptr;
        if (iv == nullptr) {
          throw ConfigError("sweep axis delta needs an implicit_variance bias");
        }
        std::fill(iv->delta.begin() + 1, iv->delta.end(), value);
        break;
      }
      case SweepAxis::kPhi:
        point.phi = value;
        break;
      case SweepAxis::kGamma:
        if (value != std::floor(value)) {
          throw ConfigError("gamma must be an integer, got " + Format12(value));
        }
        point.gamma = static_cast<int>(value);
        break;
      case SweepAxis::kAlpha:
        point.alpha = value;
        break;
    }
    if (point.bias) Validate(*point.bias, num_groups);
    MallowsModel check(IdentityRanking(num_institutions), point.phi);
    if (point.gamma &&
        (*point.gamma < 0 || *point.gamma > MaxKendallTau(num_institutions))) {
      throw ConfigError("gamma " + std::to_string(*point.gamma) +
                        " outside [0, " +
                        std::to_string(MaxKendallTau(num_institutions)) + "]");
    }
    if (!(point.alpha >= 0.0 && point.alpha <= 1.0)) {
      throw ConfigError("alpha must lie in [0, 1], got " +
                        Format12(point.alpha));
    }
  } catch (const std::exception& e) {
    point.error = e.what();
  }
  return point;
}

Population MakePopulation(const ExperimentConfig& config) {
  Population pop;
  if (config.ingest) {
    const auto& src = *config.ingest;
    const CandidateTable table =
        LoadCandidates(src.candidates_path, src.group_column);
    const CentralRanking ranking =
        BuildCentralRanking(LoadPrograms(src.programs_path), src.cutoff);
    CandidatePool pool = BuildCandidatePool(table, src.rank_limit);
    pop.capacities = ranking.capacities;
    pop.groups = std::move(pool.groups);
    pop.fixed_scores = LatentProfile{std::move(pool.scores)};
  } else {
    pop.capacities = config.capacities;
    std::vector<int> sizes = config.group_sizes;
    if (sizes.empty()) {
      sizes = {config.num_candidates - config.num_candidates / 2,
               config.num_candidates / 2};
    }
    std::vector<int> labels;
    for (std::size_t g = 0; g < sizes.size(); ++g) {
      labels.insert(labels.end(), sizes[g], static_cast<int>(g));
    }
    pop.groups = GroupLabels(std::move(labels), static_cast<int>(sizes.size()));
  }
  const int p = static_cast<int>(pop.capacities.size());
  pop.central = config.central_ranking ? *config.central_ranking
                                       : IdentityRanking(p);
  if (static_cast<int>(pop.central.size()) != p ||
      !IsPermutation(pop.central)) {
    throw ConfigError("preferences.central_ranking must be a permutation of "
                      "0.." + std::to_string(p - 1));
  }
  for (const auto& m : config.metrics) {
    const int ell = MetricEll(m);
    if (ell > p) {
      throw ConfigError("metric " + m + ": top-l exceeds the " +
                        std::to_string(p) + " institutions");
    }
  }
  return pop;
}

// Per-draw metric values for every algorithm; NaN marks a failed cell.
struct DrawOutcome {
  std::vector<std::vector<double>> values;  // [algorithm][metric]
  std::vector<std::string> errors;          // [algorithm]
};

DrawOutcome RunDraw(const ExperimentConfig& config, const Population& pop,
                    const PointSetup& point, Rng& rng) {
  const std::size_t num_algs = config.algorithms.size();
  DrawOutcome out{std::vector<std::vector<double>>(num_algs),
                  std::vector<std::string>(num_algs)};
  const GroupLabels& groups = *pop.groups;
  const int n = groups.size();
  try {
    LatentProfile latent = pop.fixed_scores
                               ? *pop.fixed_scores
                               : SampleUtilities(config.utility, n, rng);
    std::vector<double> observed =
        point.bias ? ApplyBias(*point.bias, latent, groups, rng)
                   : latent.latent_utilities;
    std::vector<MallowsModel> models;
    models.emplace_back(pop.central, point.phi);
    if (point.gamma) {
      models.emplace_back(RankingAtDistance(pop.central, *point.gamma, rng),
                          point.phi);
    }
    std::vector<Permutation> prefs(n);
    for (int i = 0; i < n; ++i) {
      const int g = groups.group_of(i);
      prefs[i] = SampleMallows(models[g == 0 ? 0 : models.size() - 1], rng);
    }
    const Instance instance(pop.capacities, std::move(observed),
                            std::move(prefs));
    std::vector<int> ells;
    for (const auto& m : config.metrics) {
      if (const int ell = MetricEll(m); ell > 0) ells.push_back(ell);
    }
    for (std::size_t a = 0; a < num_algs; ++a) {
      try {
        const ConstraintPolicy policy{config.algorithms[a], point.alpha};
        const Assignment assignment = Allocate(policy, instance, groups);
        const MetricsReport report =
            ComputeMetrics(instance, latent, groups, assignment, ells);
        std::size_t next_ell = 0;
        for (const auto& m : config.metrics) {
          if (m == "U") {
            out.values[a].push_back(report.utility_ratio);
          } else if (m == "R") {
            out.values[a].push_back(report.representation.ratio);
          } else {
            out.values[a].push_back(
                report.preference[next_ell++].fairness.ratio);
          }
        }
      } catch (const std::exception& e) {
        out.errors[a] = e.what();
      }
    }
  } catch (const std::exception& e) {
    for (auto& err : out.errors) err = e.what();
  }
  return out;
}

}  // namespace

const char* SweepAxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kBeta:
      return "beta";
    case SweepAxis::kPhi:
      return "phi";
    case SweepAxis::kGamma:
      return "gamma";
    case SweepAxis::kAlpha:
      return "alpha";
    case SweepAxis::kDelta:
      return "delta";
  }
  return "?";
}

ExperimentConfig ParseConfig(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RejectUnknownKeys(root, "config",
                    {"seed", "iterations", "n", "p", "capacity", "capacities",
                     "group_sizes", "utility", "bias", "preferences",
                     "algorithms", "alpha", "metrics", "sweep", "paired",
                     "ingest"});
  ExperimentConfig c;
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) {
      throw ConfigError("seed: expected a non-negative integer");
    }
    c.seed = root["seed"].get<std::uint64_t>();
    c.has_seed = true;
  }
  if (root.contains("iterations")) {
    c.iterations = GetInt(root["iterations"], "iterations");
  }
  if (c.iterations < 1) throw ConfigError("iterations: must be >= 1");

  if (root.contains("ingest")) {
    for (const char* k : {"n", "p", "capacity", "capacities", "group_sizes",
                          "utility", "bias"}) {
      if (root.contains(k)) {
        throw ConfigError(std::string("config: '") + k +
                          "' cannot be combined with 'ingest'; the data "
                          "files define it");
      }
    }
    const json& j = root["ingest"];
    RejectUnknownKeys(j, "ingest",
                      {"candidates", "programs", "group_column", "cutoff",
                       "rank_limit"});
    IngestSource src;
    if (!j.contains("candidates") || !j.contains("programs")) {
      throw ConfigError("ingest: 'candidates' and 'programs' are required");
    }
    src.candidates_path = GetString(j["candidates"], "ingest.candidates");
    src.programs_path = GetString(j["programs"], "ingest.programs");
    if (j.contains("group_column")) {
      src.group_column = GetString(j["group_column"], "ingest.group_column");
    }
    if (j.contains("cutoff")) {
      src.cutoff = GetNumber(j["cutoff"], "ingest.cutoff");
    }
    if (j.contains("rank_limit")) {
      src.rank_limit = GetInt(j["rank_limit"], "ingest.rank_limit");
      if (src.rank_limit < 0) {
        throw ConfigError("ingest.rank_limit: must be >= 0");
      }
    }
    c.ingest = src;
    c.capacities.clear();
  } else {
    if (root.contains("n")) c.num_candidates = GetInt(root["n"], "n");
    if (c.num_candidates < 1) throw ConfigError("n: must be >= 1");
    if (root.contains("capacities") && root.contains("capacity")) {
      throw ConfigError("config: give 'capacities' or 'capacity', not both");
    }
    if (root.contains("capacities")) {
      c.capacities = GetIntList(root["capacities"], "capacities");
      if (root.contains("p") &&
          GetInt(root["p"], "p") != static_cast<int>(c.capacities.size())) {
        throw ConfigError("p: disagrees with the length of 'capacities'");
      }
    } else {
      const int p = root.contains("p") ? GetInt(root["p"], "p") : 5;
      const int k = root.contains("capacity")
                        ? GetInt(root["capacity"], "capacity")
                        : 100;
      if (p < 1) throw ConfigError("p: must be >= 1");
      c.capacities.assign(p, k);
    }
    if (c.capacities.empty()) throw ConfigError("capacities: must be nonempty");
    for (int k : c.capacities) {
      if (k < 0) throw ConfigError("capacities: must be >= 0");
    }
    if (root.contains("group_sizes")) {
      c.group_sizes = GetIntList(root["group_sizes"], "group_sizes");
      long long total = 0;
      for (int s : c.group_sizes) {
        if (s < 1) throw ConfigError("group_sizes: every group needs >= 1");
        total += s;
      }
      if (c.group_sizes.size() < 2 || total != c.num_candidates) {
        throw ConfigError("group_sizes: need at least two groups summing to n");
      }
    } else if (c.num_candidates < 2) {
      throw ConfigError("n: two groups need n >= 2");
    }
    if (root.contains("utility")) c.utility = ParseUtility(root["utility"]);
    if (root.contains("bias")) {
      const int g = c.group_sizes.empty()
                        ? 2
                        : static_cast<int>(c.group_sizes.size());
      c.bias = ParseBias(root["bias"], g);
    }
  }

  if (root.contains("preferences")) {
    const json& j = root["preferences"];
    RejectUnknownKeys(j, "preferences", {"phi", "central_ranking", "gamma"});
    if (j.contains("phi")) c.phi = GetNumber(j["phi"], "preferences.phi");
    if (j.contains("central_ranking")) {
      c.central_ranking =
          GetIntList(j["central_ranking"], "preferences.central_ranking");
    }
    if (j.contains("gamma")) c.gamma = GetInt(j["gamma"], "preferences.gamma");
  }
  if (root.contains("algorithms")) {
    const json& j = root["algorithms"];
    if (!j.is_array() || j.empty()) {
      throw ConfigError("algorithms: expected a nonempty list");
    }
    c.algorithms.clear();
    std::set<std::string> seen;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string name =
          GetString(j[i], "algorithms[" + std::to_string(i) + "]");
      if (!seen.insert(name).second) {
        throw ConfigError("algorithms: '" + name + "' listed twice");
      }
      try {
        c.algorithms.push_back(ParsePolicyKind(name));
      } catch (const std::exception& e) {
        throw ConfigError(std::string("algorithms: ") + e.what());
      }
    }
  }
  if (root.contains("alpha")) c.alpha = GetNumber(root["alpha"], "alpha");
  if (root.contains("metrics")) {
    const json& j = root["metrics"];
    if (!j.is_array() || j.empty()) {
      throw ConfigError("metrics: expected a nonempty list");
    }
    c.metrics.clear();
    std::set<std::string> seen;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string m = GetString(j[i], "metrics[" + std::to_string(i) + "]");
      if (m != "U" && m != "R" && MetricEll(m) < 1) {
        throw ConfigError("metrics: expected U, R or P<l> with l >= 1, got '" +
                          m + "'");
      }
      if (!seen.insert(m).second) {
        throw ConfigError("metrics: '" + m + "' listed twice");
      }
      c.metrics.push_back(m);
    }
  }
  if (!root.contains("sweep")) {
    throw ConfigError("sweep: required (axis and a nonempty list of values)");
  }
  {
    const json& j = root["sweep"];
    RejectUnknownKeys(j, "sweep", {"axis", "values"});
    if (!j.contains("axis") || !j.contains("values")) {
      throw ConfigError("sweep: needs both 'axis' and 'values'");
    }
    c.sweep_axis = ParseAxis(GetString(j["axis"], "sweep.axis"));
    c.sweep_values = GetNumberList(j["values"], "sweep.values");
    if (c.sweep_values.empty()) throw ConfigError("sweep.values: empty grid");
    if (c.ingest && (c.sweep_axis == SweepAxis::kBeta ||
                     c.sweep_axis == SweepAxis::kDelta)) {
      throw ConfigError("sweep.axis: ingested scores are already observed; "
                        "sweep phi, gamma or alpha instead");
    }
  }
  if (root.contains("paired")) {
    if (!root["paired"].is_boolean()) {
      throw ConfigError("paired: expected true or false");
    }
    c.paired = root["paired"].get<bool>();
  }
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

std::string ConfigToJson(const ExperimentConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["iterations"] = c.iterations;
  if (c.ingest) {
    j["ingest"] = {{"candidates", c.ingest->candidates_path},
                   {"programs", c.ingest->programs_path},
                   {"group_column", c.ingest->group_column},
                   {"cutoff", c.ingest->cutoff},
                   {"rank_limit", c.ingest->rank_limit}};
  } else {
    j["n"] = c.num_candidates;
    j["capacities"] = c.capacities;
    if (!c.group_sizes.empty()) j["group_sizes"] = c.group_sizes;
    j["utility"] = UtilityToJson(c.utility);
    if (c.bias) j["bias"] = BiasToJson(*c.bias);
  }
  json prefs = {{"phi", c.phi}};
  if (c.central_ranking) prefs["central_ranking"] = *c.central_ranking;
  if (c.gamma) prefs["gamma"] = *c.gamma;
  j["preferences"] = prefs;
  json algs = json::array();
  for (auto kind : c.algorithms) algs.push_back(std::string(PolicyName(kind)));
  j["algorithms"] = algs;
  j["alpha"] = c.alpha;
  j["metrics"] = c.metrics;
  j["sweep"] = {{"axis", SweepAxisName(c.sweep_axis)},
                {"values", c.sweep_values}};
  j["paired"] = c.paired;
  return j.dump();
}

bool ExperimentResult::HasErrors() const {
  for (const auto& point : points) {
    for (const auto& alg : point.algorithms) {
      if (!alg.error.empty()) return true;
    }
  }
  return false;
}

std::pair<double, double> MeanAndSem(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n == 0) return {0.0, 0.0};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

ExperimentResult RunExperiment(const ExperimentConfig& config, int threads) {
  if (config.iterations < 1) throw ConfigError("iterations: must be >= 1");
  if (config.sweep_values.empty()) throw ConfigError("sweep: empty grid");
  if (config.algorithms.empty() || config.metrics.empty()) {
    throw ConfigError("algorithms and metrics must be nonempty");
  }
  const Population pop = MakePopulation(config);
  const int num_groups = pop.groups->num_groups();
  const int p = static_cast<int>(pop.capacities.size());

  const int num_points = static_cast<int>(config.sweep_values.size());
  std::vector<PointSetup> points;
  for (double v : config.sweep_values) {
    points.push_back(MakePoint(config, num_groups, p, v));
  }

  // draws[s * iterations + i]; each task writes only its own slot, and the
  // reduction below walks slots in index order.
  const int iters = config.iterations;
  std::vector<DrawOutcome> draws(static_cast<std::size_t>(num_points) * iters);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < draws.size(); t = next++) {
      const int s = static_cast<int>(t / iters);
      const int i = static_cast<int>(t % iters);
      if (!points[s].error.empty()) continue;
      Rng rng = KeyedStream(config.seed, config.paired ? 0 : s, i);
      draws[t] = RunDraw(config, pop, points[s], rng);
    }
  };
  const int workers = std::max(1, threads);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ExperimentResult result;
  result.sweep_axis = SweepAxisName(config.sweep_axis);
  result.seed = config.seed;
  result.config_hash = Fnv1aHex(ConfigToJson(config));
  const std::size_t num_algs = config.algorithms.size();
  const std::size_t num_metrics = config.metrics.size();
  for (int s = 0; s < num_points; ++s) {
    SweepPointResult point{config.sweep_values[s], {}};
    for (std::size_t a = 0; a < num_algs; ++a) {
      AlgorithmSummary summary;
      summary.algorithm = std::string(PolicyName(config.algorithms[a]));
      if (!points[s].error.empty()) {
        summary.error = points[s].error;
        point.algorithms.push_back(std::move(summary));
        continue;
      }
      for (int i = 0; i < iters && summary.error.empty(); ++i) {
        const auto& err = draws[static_cast<std::size_t>(s) * iters + i].errors[a];
        if (!err.empty()) {
          summary.error = "iteration " + std::to_string(i) + ": " + err;
        }
      }
      if (summary.error.empty()) {
        for (std::size_t m = 0; m < num_metrics; ++m) {
          std::vector<double> samples(iters);
          for (int i = 0; i < iters; ++i) {
            samples[i] =
                draws[static_cast<std::size_t>(s) * iters + i].values[a][m];
          }
          const auto [mean, sem] = MeanAndSem(samples);
          summary.metrics.push_back({config.metrics[m], mean, sem, iters});
        }
      }
      point.algorithms.push_back(std::move(summary));
    }
    result.points.push_back(std::move(point));
  }
  return result;
}

std::string ResultToCsv(const ExperimentResult& result) {
  std::string out = "sweep_value,algorithm,metric,mean,sem,iterations\n";
  for (const auto& point : result.points) {
    for (const auto& alg : point.algorithms) {
      for (const auto& m : alg.metrics) {
        out += Format12(point.sweep_value) + ',' + alg.algorithm + ',' +
               m.metric + ',' + Format12(m.mean) + ',' + Format12(m.sem) +
               ',' + std::to_string(m.iterations) + '\n';
      }
    }
  }
  return out;
}

std::string ResultToJson(const ExperimentResult& result) {
  json points = json::array();
  for (const auto& point : result.points) {
    json algs = json::array();
    for (const auto& alg : point.algorithms) {
      json metrics = json::array();
      for (const auto& m : alg.metrics) {
        metrics.push_back({{"metric", m.metric},
                           {"mean", m.mean},
                           {"sem", m.sem},
                           {"iterations", m.iterations}});
      }
      json a = {{"algorithm", alg.algorithm}, {"metrics", metrics}};
      if (!alg.error.empty()) a["error"] = alg.error;
      algs.push_back(std::move(a));
    }
    points.push_back(
        {{"sweep_value", point.sweep_value}, {"algorithms", algs}});
  }
  const json root = {{"sweep_axis", result.sweep_axis},
                     {"seed", result.seed},
                     {"config_hash", result.config_hash},
                     {"points", points}};
  return root.dump(2) + "\n";
}

ExperimentResult ResultFromJson(const std::string& json_text) {
  try {
    const json root = json::parse(json_text);
    ExperimentResult result;
    result.sweep_axis = root.at("sweep_axis").get<std::string>();
    result.seed = root.at("seed").get<std::uint64_t>();
    result.config_hash = root.at("config_hash").get<std::string>();
    for (const auto& p : root.at("points")) {
      SweepPointResult point{p.at("sweep_value").get<double>(), {}};
      for (const auto& a : p.at("algorithms")) {
        AlgorithmSummary alg;
        alg.algorithm = a.at("algorithm").get<std::string>();
        if (a.contains("error")) alg.error = a["error"].get<std::string>();
        for (const auto& m : a.at("metrics")) {
          alg.metrics.push_back({m.at("metric").get<std::string>(),
                                 m.at("mean").get<double>(),
                                 m.at("sem").get<double>(),
                                 m.at("iterations").get<int>()});
        }
        point.algorithms.push_back(std::move(alg));
      }
      result.points.push_back(std::move(point));
    }
    return result;
  } catch (const json::exception& e) {
    throw ParseError(std::string("result JSON: ") + e.what());
  }
}

void EmitResults(const ExperimentResult& result, OutputFormat format,
                 const std::string& path) {
  const std::string text = format == OutputFormat::kCsv ? ResultToCsv(result)
                                                        : ResultToJson(result);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::ios_base::failure("write to '" + path + "' failed");
}

}  // namespace fairselect
