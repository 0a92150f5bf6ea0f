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

#include "encsynth/common/rng.h"

#include <vector>

namespace encsynth {

Rng MakeRng(std::uint64_t seed, std::initializer_list<std::uint64_t> labels) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * labels.size());
  words.push_back(static_cast<std::uint32_t>(seed));
  words.push_back(static_cast<std::uint32_t>(seed >> 32));
  for (std::uint64_t label : labels) {
    words.push_back(static_cast<std::uint32_t>(label));
    words.push_back(static_cast<std::uint32_t>(label >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

double UniformUnit(Rng& rng) {
  // 53 random mantissa bits; independent of the standard library's
  // distribution implementations.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t UniformIndex(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(UniformUnit(rng) * static_cast<double>(n));
}

std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace encsynth
