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

#include "encsynth/he/profile.h"

#include <cmath>
#include <string>

#include "encsynth/common/error.h"

namespace encsynth::he {

void HeProfile::Validate() const {
  if (ring_dimension < 2 || (ring_dimension & (ring_dimension - 1)) != 0) {
    throw InvalidArgument("HeProfile: ring_dimension must be a power of two, got " +
                          std::to_string(ring_dimension));
  }
  if (chain_bits.size() < 3) {
    throw InvalidArgument("HeProfile: the modulus chain needs at least 3 primes");
  }
  for (int b : chain_bits) {
    if (b < 2 || b > 61) throw InvalidArgument("HeProfile: chain prime sizes must be in [2, 61]");
  }
  if (log2_scale < 20 || log2_scale > 60) {
    throw InvalidArgument("HeProfile: log2_scale must be in [20, 60]");
  }
}

double HeProfile::scale() const { return std::ldexp(1.0, log2_scale); }

std::uint64_t HeProfile::Hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ull;
    }
  };
  mix(static_cast<std::uint64_t>(ring_dimension));
  mix(chain_bits.size());
  for (int b : chain_bits) mix(static_cast<std::uint64_t>(b));
  mix(static_cast<std::uint64_t>(log2_scale));
  return h;
}

}  // namespace encsynth::he
