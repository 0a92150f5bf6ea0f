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

#ifndef ENCSYNTH_RLWE_PARAMS_H_
#define ENCSYNTH_RLWE_PARAMS_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "encsynth/he/profile.h"
#include "encsynth/rlwe/modarith.h"
#include "encsynth/rlwe/ntt.h"

namespace encsynth::rlwe {

// Written into every serialized key and ciphertext.
inline constexpr char kSecurityStamp[] = "security: NONE (research toy)";

// Concrete parameters derived from an HeProfile.
//
// chain[0] has chain_bits[0] bits and holds the decrypted message. Each
// interior prime chain[l] (l = 1..L) is an NTT-friendly prime near Delta, where
// Delta_L is within 2^-20 of 2^log2_scale and Delta_{l-1} = Delta_l^2 / chain[l]; rescaling a
// product of two level-l ciphertexts then lands exactly on Delta_{l-1}, and
// every Delta_l stays within about 2^-20 of Delta. The special prime used for
// key switching has chain_bits.back() bits.
struct RlweParams {
  he::HeProfile profile;
  std::size_t n = 0;
  std::vector<u64> chain;
  u64 special = 0;
  double sigma = 3.2;
  // Canonical scale per level, index 0..L.
  std::vector<long double> scales;
  std::uint64_t hash = 0;

  int max_level() const { return static_cast<int>(chain.size()) - 1; }
  std::size_t slots() const { return n / 2; }
};

// Throws InvalidArgument unless the ring dimension is in [2^10, 2^14] and the
// outer primes are wider than the scale.
RlweParams MakeRlweParams(const he::HeProfile& profile);

// Parameters plus per-prime tables. Prime index i < chain.size() is chain[i];
// index chain.size() is the special prime.
class RlweContext {
 public:
  explicit RlweContext(RlweParams params);

  const RlweParams& params() const { return params_; }
  std::size_t n() const { return params_.n; }
  std::size_t special_index() const { return params_.chain.size(); }
  const Modulus& modulus(std::size_t i) const { return moduli_[i]; }
  const NttTables& ntt(std::size_t i) const { return ntt_[i]; }

 private:
  RlweParams params_;
  std::vector<Modulus> moduli_;
  std::vector<NttTables> ntt_;
};

std::shared_ptr<const RlweContext> MakeContext(const he::HeProfile& profile);

}  // namespace encsynth::rlwe

#endif  // ENCSYNTH_RLWE_PARAMS_H_
