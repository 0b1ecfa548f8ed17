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

#include "fairselect/bias.h"

#include <cmath>
#include <random>
#include <string>

#include "fairselect/errors.h"

namespace fairselect {
namespace {

void CheckCount(std::size_t given, int num_groups, const char* what) {
  if (given < static_cast<std::size_t>(num_groups)) {
    throw ConfigError(std::string(what) + ": " + std::to_string(given) +
                      " parameters for " + std::to_string(num_groups) +
                      " groups");
  }
}

struct Validator {
  int num_groups;
  void operator()(const BetaBias& m) const {
    CheckCount(m.beta.size(), num_groups, "beta bias");
    for (double b : m.beta) {
      if (!(b > 0.0) || !std::isfinite(b)) {
        throw ConfigError("beta bias: beta must be finite and > 0, got " +
                          std::to_string(b));
      }
    }
  }
  void operator()(const NoisyBeta& m) const {
    CheckCount(m.center.size(), num_groups, "noisy beta");
    if (!(m.std > 0.0)) throw ConfigError("noisy beta: std must be > 0");
    if (!(m.center[0] > 0.0) || !std::isfinite(m.center[0])) {
      throw ConfigError("noisy beta: group 0 scale must be finite and > 0");
    }
    for (std::size_t g = 1; g < m.center.size(); ++g) {
      if (!(m.center[g] >= 0.0 && m.center[g] <= 1.0)) {
        throw ConfigError("noisy beta: centers must lie in [0, 1], got " +
                          std::to_string(m.center[g]));
      }
    }
  }
  void operator()(const ImplicitVariance& m) const {
    CheckCount(m.delta.size(), num_groups, "implicit variance");
    for (double d : m.delta) {
      if (!(d >= 0.0) || !std::isfinite(d)) {
        throw ConfigError("implicit variance: delta must be finite and >= 0");
      }
    }
  }
};

double TruncatedUnitGaussian(double center, double std, Rng& rng) {
  std::normal_distribution<double> normal(center, std);
  while (true) {
    const double x = normal(rng);
    if (x >= 0.0 && x <= 1.0) return x;
  }
}

}  // namespace

void Validate(const BiasModel& model, int num_groups) {
  std::visit(Validator{num_groups}, model);
}

std::vector<double> ApplyBias(const BiasModel& model,
                              const LatentProfile& latent,
                              const GroupLabels& groups, Rng& rng) {
  if (latent.size() != groups.size()) {
    throw InputError("apply_bias: latent profile and group labels differ in "
                     "length");
  }
  Validate(model, groups.num_groups());
  const auto& u = latent.latent_utilities;
  std::vector<double> observed(u.size());
  if (const auto* m = std::get_if<BetaBias>(&model)) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      observed[i] = m->beta[groups.group_of(i)] * u[i];
    }
  } else if (const auto* m = std::get_if<NoisyBeta>(&model)) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      const int g = groups.group_of(i);
      const double b = g == 0 ? m->center[0]
                              : TruncatedUnitGaussian(m->center[g], m->std, rng);
      observed[i] = b * u[i];
    }
  } else {
    const auto& iv = std::get<ImplicitVariance>(model);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      observed[i] = u[i] + iv.delta[groups.group_of(i)] * normal(rng);
    }
  }
  return observed;
}

}  // namespace fairselect
