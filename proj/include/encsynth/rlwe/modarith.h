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

#ifndef ENCSYNTH_RLWE_MODARITH_H_
#define ENCSYNTH_RLWE_MODARITH_H_

#include <cstdint>
#include <vector>

namespace encsynth::rlwe {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

// A prime modulus below 2^61 with a precomputed Barrett constant
// floor(2^128 / q).
class Modulus {
 public:
  explicit Modulus(u64 q);

  u64 value() const { return q_; }
  u64 Reduce(u128 x) const;
  u64 Mul(u64 a, u64 b) const { return Reduce(static_cast<u128>(a) * b); }
  u64 Add(u64 a, u64 b) const {
    const u64 s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  u64 Sub(u64 a, u64 b) const { return a >= b ? a - b : a + q_ - b; }
  u64 Neg(u64 a) const { return a == 0 ? 0 : q_ - a; }
  // Residue of a signed integer.
  u64 FromSigned(std::int64_t v) const;
  // Residue of an integral long double of any magnitude.
  u64 FromIntegral(long double v) const;
  // Representative in (-q/2, q/2].
  std::int64_t Centered(u64 a) const {
    return a > q_ / 2 ? static_cast<std::int64_t>(a) - static_cast<std::int64_t>(q_)
                      : static_cast<std::int64_t>(a);
  }
  u64 Pow(u64 base, u64 exp) const;
  // Inverse of a nonzero residue (q prime).
  u64 Inverse(u64 a) const { return Pow(a, q_ - 2); }

 private:
  u64 q_;
  u64 ratio_lo_;
  u64 ratio_hi_;
};

// w' = floor(w 2^64 / q) for MulShoup.
inline u64 ShoupPrecompute(u64 w, u64 q) {
  return static_cast<u64>((static_cast<u128>(w) << 64) / q);
}

// x w mod q for a fixed w, x < 2^64, q < 2^63.
inline u64 MulShoup(u64 x, u64 w, u64 w_shoup, u64 q) {
  const u64 hi = static_cast<u64>((static_cast<u128>(x) * w_shoup) >> 64);
  const u64 r = x * w - hi * q;
  return r >= q ? r - q : r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool IsPrime(u64 n);

// Largest prime p = 1 (mod m) below `bound`, skipping `exclude`.
u64 CongruentPrimeBelow(u64 bound, u64 m, const std::vector<u64>& exclude);

}  // namespace encsynth::rlwe

#endif  // ENCSYNTH_RLWE_MODARITH_H_
