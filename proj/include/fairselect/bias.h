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

#ifndef FAIRSELECT_BIAS_H_
#define FAIRSELECT_BIAS_H_

#include <variant>
#include <vector>

#include "fairselect/core.h"
#include "fairselect/rng.h"

namespace fairselect {

// observed = beta[g] * latent.
struct BetaBias {
  std::vector<double> beta;
};

// Every candidate outside group 0 draws its own multiplier from a Gaussian
// centred at center[g] with standard deviation `std`, truncated to [0, 1].
// Group 0 is scaled by center[0] without noise.
struct NoisyBeta {
  std::vector<double> center;
  double std = 0.1;
};

// observed = latent + delta[g] * z, z standard normal. Observed values may be
// negative; only their order matters to the algorithms.
struct ImplicitVariance {
  std::vector<double> delta;
};

using BiasModel = std::variant<BetaBias, NoisyBeta, ImplicitVariance>;

// Throws ConfigError if a parameter is invalid or fewer parameters than
// `num_groups` are given.
void Validate(const BiasModel& model, int num_groups);

// Observed utilities for every candidate. `rng` is untouched by BetaBias.
std::vector<double> ApplyBias(const BiasModel& model,
                              const LatentProfile& latent,
                              const GroupLabels& groups, Rng& rng);

}  // namespace fairselect

#endif  // FAIRSELECT_BIAS_H_
