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

#include "encsynth/rlwe/ntt.h"

#include <bit>

#include "encsynth/common/error.h"

namespace encsynth::rlwe {
namespace {

std::size_t BitReverse(std::size_t x, int bits) {
  std::size_t r = 0;
  for (int i = 0; i < bits; ++i) r |= ((x >> i) & 1) << (bits - 1 - i);
  return r;
}

}  // namespace

NttTables::NttTables(const Modulus& q, std::size_t n) : q_(q), n_(n) {
  if (n < 2 || !std::has_single_bit(n)) throw InvalidArgument("NTT size must be a power of two");
  const u64 two_n = 2 * n;
  if ((q.value() - 1) % two_n != 0) throw InvalidArgument("NTT prime must be 1 mod 2n");
  // psi = g^((q-1)/2n) has order exactly 2n iff psi^n = -1.
  psi_ = 0;
  for (u64 g = 2; g < q.value(); ++g) {
    const u64 cand = q.Pow(g, (q.value() - 1) / two_n);
    if (q.Pow(cand, n) == q.value() - 1) {
      psi_ = cand;
      break;
    }
  }
  if (psi_ == 0) throw InvalidArgument("no primitive 2n-th root of unity");
  const int bits = std::countr_zero(n);
  const u64 psi_inv = q.Inverse(psi_);
  psi_rev_.resize(n);
  inv_psi_rev_.resize(n);
  psi_rev_shoup_.resize(n);
  inv_psi_rev_shoup_.resize(n);
  u64 p = 1;
  u64 pi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = BitReverse(i, bits);
    psi_rev_[r] = p;
    inv_psi_rev_[r] = pi;
    p = q.Mul(p, psi_);
    pi = q.Mul(pi, psi_inv);
  }
  for (std::size_t i = 0; i < n; ++i) {
    psi_rev_shoup_[i] = ShoupPrecompute(psi_rev_[i], q.value());
    inv_psi_rev_shoup_[i] = ShoupPrecompute(inv_psi_rev_[i], q.value());
  }
  n_inv_ = q.Inverse(n % q.value());
  n_inv_shoup_ = ShoupPrecompute(n_inv_, q.value());
}

void NttTables::Forward(std::span<u64> a) const {
  const u64 q = q_.value();
  std::size_t t = n_;
  for (std::size_t m = 1; m < n_; m <<= 1) {
    t >>= 1;
    for (std::size_t i = 0; i < m; ++i) {
      const u64 w = psi_rev_[m + i];
      const u64 ws = psi_rev_shoup_[m + i];
      const std::size_t j1 = 2 * i * t;
      for (std::size_t j = j1; j < j1 + t; ++j) {
        const u64 u = a[j];
        const u64 v = MulShoup(a[j + t], w, ws, q);
        a[j] = q_.Add(u, v);
        a[j + t] = q_.Sub(u, v);
      }
    }
  }
}

void NttTables::Inverse(std::span<u64> a) const {
  const u64 q = q_.value();
  std::size_t t = 1;
  for (std::size_t m = n_; m > 1; m >>= 1) {
    const std::size_t h = m >> 1;
    std::size_t j1 = 0;
    for (std::size_t i = 0; i < h; ++i) {
      const u64 w = inv_psi_rev_[h + i];
      const u64 ws = inv_psi_rev_shoup_[h + i];
      for (std::size_t j = j1; j < j1 + t; ++j) {
        const u64 u = a[j];
        const u64 v = a[j + t];
        a[j] = q_.Add(u, v);
        a[j + t] = MulShoup(q_.Sub(u, v), w, ws, q);
      }
      j1 += 2 * t;
    }
    t <<= 1;
  }
  for (u64& x : a) x = MulShoup(x, n_inv_, n_inv_shoup_, q);
}

std::vector<u64> NegacyclicProductSchoolbook(std::span<const u64> a, std::span<const u64> b,
                                             const Modulus& q) {
  const std::size_t n = a.size();
  std::vector<u64> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const u64 p = q.Mul(a[i], b[j]);
      const std::size_t k = i + j;
      if (k < n) {
        out[k] = q.Add(out[k], p);
      } else {
        out[k - n] = q.Sub(out[k - n], p);  // X^n = -1
      }
    }
  }
  return out;
}

}  // namespace encsynth::rlwe
