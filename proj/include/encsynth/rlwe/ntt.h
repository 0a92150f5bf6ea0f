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

#ifndef ENCSYNTH_RLWE_NTT_H_
#define ENCSYNTH_RLWE_NTT_H_

#include <cstddef>
#include <span>
#include <vector>

#include "encsynth/rlwe/modarith.h"

namespace encsynth::rlwe {

// Negacyclic NTT over Z_q[X]/(X^n + 1) for a prime q = 1 (mod 2n). Forward
// is Cooley-Tukey with bit-reversed powers of a primitive 2n-th root psi,
// inverse is Gentleman-Sande (Longa and Naehrig's formulation), so no
// bit-reversal pass is needed and the pointwise product of two transforms is
// the transform of the negacyclic product.
class NttTables {
 public:
  NttTables(const Modulus& q, std::size_t n);

  std::size_t n() const { return n_; }
  const Modulus& modulus() const { return q_; }
  u64 psi() const { return psi_; }

  void Forward(std::span<u64> a) const;
  void Inverse(std::span<u64> a) const;

 private:
  Modulus q_;
  std::size_t n_;
  u64 psi_;
  std::vector<u64> psi_rev_, psi_rev_shoup_;
  std::vector<u64> inv_psi_rev_, inv_psi_rev_shoup_;
  u64 n_inv_, n_inv_shoup_;
};

// Negacyclic product by the O(n^2) definition.
std::vector<u64> NegacyclicProductSchoolbook(std::span<const u64> a, std::span<const u64> b,
                                             const Modulus& q);

}  // namespace encsynth::rlwe

#endif  // ENCSYNTH_RLWE_NTT_H_
