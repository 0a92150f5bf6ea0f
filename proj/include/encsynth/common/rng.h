/*
 * Copyright 2026 The encsynth Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ENCSYNTH_COMMON_RNG_H_
#define ENCSYNTH_COMMON_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace encsynth {

using Rng = std::mt19937_64;

// Builds an independent stream from a root seed and a list of stream labels
// (episode index, worker id, ...). Same inputs always give the same stream.
Rng MakeRng(std::uint64_t seed, std::initializer_list<std::uint64_t> labels = {});

// Uniform double in [0, 1).
double UniformUnit(Rng& rng);

// Uniform integer in [0, n).
std::size_t UniformIndex(Rng& rng, std::size_t n);

// SplitMix64 finalizer; used for stateless, hash-derived randomness.
std::uint64_t Mix64(std::uint64_t x);

}  // namespace encsynth

#endif  // ENCSYNTH_COMMON_RNG_H_
