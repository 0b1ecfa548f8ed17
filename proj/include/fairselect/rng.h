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

#ifndef FAIRSELECT_RNG_H_
#define FAIRSELECT_RNG_H_

#include <cstdint>
#include <random>

namespace fairselect {

// The random stream every sampling routine takes by reference.
using Rng = std::mt19937_64;

// SplitMix64 finalizer; a bijective 64-bit mix.
std::uint64_t Mix64(std::uint64_t x);

// Independent stream keyed by (seed, sweep point, iteration). Streams with
// different keys are statistically unrelated, so draws can be computed in any
// order or on any thread and still agree.
Rng KeyedStream(std::uint64_t seed, std::uint64_t sweep_index,
                std::uint64_t iteration);

// Uniform double in [0, 1) with 53 random bits.
inline double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace fairselect

#endif  // FAIRSELECT_RNG_H_
