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

#ifndef ENCSYNTH_HE_PROFILE_H_
#define ENCSYNTH_HE_PROFILE_H_

#include <cstdint>
#include <vector>

namespace encsynth::he {

// Parameters of a leveled approximate-arithmetic scheme. The first and last
// chain entries are the base prime (decryption precision) and the special
// key-switching prime; the interior entries are the rescaling primes, one per
// usable level.
struct HeProfile {
  int ring_dimension = 1 << 14;
  std::vector<int> chain_bits = {60, 30, 30, 30, 30, 60};
  int log2_scale = 40;

  static HeProfile Default() { return {}; }

  // Throws InvalidArgument unless ring_dimension is a power of two, the chain
  // has at least 3 entries and log2_scale >= 20.
  void Validate() const;
  int usable_levels() const { return static_cast<int>(chain_bits.size()) - 2; }
  double scale() const;
  // FNV-1a over the fields; used to tag serialized ciphertexts.
  std::uint64_t Hash() const;
  bool operator==(const HeProfile&) const = default;
};

// Largest plaintext magnitude accepted by Encrypt.
inline constexpr double kMaxPlaintextMagnitude = 1048576.0;  // 2^20

}  // namespace encsynth::he

#endif  // ENCSYNTH_HE_PROFILE_H_
