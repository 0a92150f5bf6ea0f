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

#include "encsynth/rlwe/modarith.h"

#include <algorithm>
#include <cmath>

#include "encsynth/common/error.h"

namespace encsynth::rlwe {

Modulus::Modulus(u64 q) : q_(q) {
  if (q < 3 || q >= (u64{1} << 61)) throw InvalidArgument("Modulus: q must lie in [3, 2^61)");
  // q is odd, so floor((2^128 - 1) / q) = floor(2^128 / q).
  const u128 ratio = ~u128{0} / q;
  ratio_lo_ = static_cast<u64>(ratio);
  ratio_hi_ = static_cast<u64>(ratio >> 64);
}

u64 Modulus::Reduce(u128 x) const {
  const u64 x_lo = static_cast<u64>(x);
  const u64 x_hi = static_cast<u64>(x >> 64);
  // Top word of x * ratio / 2^128, accurate to within one multiple of q.
  const u128 lo_lo = (static_cast<u128>(x_lo) * ratio_lo_) >> 64;
  const u128 lo_hi = static_cast<u128>(x_lo) * ratio_hi_;
  const u128 hi_lo = static_cast<u128>(x_hi) * ratio_lo_;
  const u128 mid = lo_lo + static_cast<u64>(lo_hi) + static_cast<u64>(hi_lo);
  const u64 quotient = x_hi * ratio_hi_ + static_cast<u64>(lo_hi >> 64) +
                       static_cast<u64>(hi_lo >> 64) + static_cast<u64>(mid >> 64);
  u64 r = x_lo - quotient * q_;
  while (r >= q_) r -= q_;
  return r;
}

u64 Modulus::FromSigned(std::int64_t v) const {
  if (v >= 0) return static_cast<u64>(v) % q_;
  const u64 m = static_cast<u64>(-(v + 1)) % q_;  // avoids overflow at INT64_MIN
  return q_ - 1 - m;
}

u64 Modulus::FromIntegral(long double v) const {
  long double r = std::fmod(v, static_cast<long double>(q_));
  if (r < 0) r += static_cast<long double>(q_);
  u64 out = static_cast<u64>(r);
  return out >= q_ ? out - q_ : out;
}

u64 Modulus::Pow(u64 base, u64 exp) const {
  u64 result = 1;
  base %= q_;
  while (exp != 0) {
    if (exp & 1) result = Mul(result, base);
    base = Mul(base, base);
    exp >>= 1;
  }
  return result;
}

namespace {

u64 PowMod(u64 b, u64 e, u64 n) {
  u128 r = 1;
  u128 x = b % n;
  while (e != 0) {
    if (e & 1) r = r * x % n;
    x = x * x % n;
    e >>= 1;
  }
  return static_cast<u64>(r);
}

}  // namespace

bool IsPrime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = PowMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = static_cast<u64>(static_cast<u128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 CongruentPrimeBelow(u64 bound, u64 m, const std::vector<u64>& exclude) {
  for (u64 k = (bound - 2) / m; k > 0; --k) {
    const u64 p = k * m + 1;
    if (IsPrime(p) && std::find(exclude.begin(), exclude.end(), p) == exclude.end()) return p;
  }
  throw InvalidArgument("no NTT-friendly prime found below the requested bound");
}

}  // namespace encsynth::rlwe
