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

#include "encsynth/rlwe/poly.h"

#include <algorithm>

#include "encsynth/common/error.h"

namespace encsynth::rlwe {
namespace {

void CheckSamePrimes(const RnsPoly& a, const RnsPoly& b) {
  if (a.primes != b.primes) throw InvalidArgument("ring elements over different primes");
}

}  // namespace

std::vector<std::size_t> ChainPrimes(const RlweContext& ctx, int level, bool with_special) {
  std::vector<std::size_t> out;
  for (int i = 0; i <= level; ++i) out.push_back(static_cast<std::size_t>(i));
  if (with_special) out.push_back(ctx.special_index());
  return out;
}

RnsPoly ZeroPoly(const RlweContext& ctx, std::vector<std::size_t> primes) {
  RnsPoly p;
  p.residues.assign(primes.size(), std::vector<u64>(ctx.n(), 0));
  p.primes = std::move(primes);
  return p;
}

RnsPoly FromCoefficients(const RlweContext& ctx, std::span<const std::int64_t> coeffs,
                         std::vector<std::size_t> primes) {
  RnsPoly p = ZeroPoly(ctx, std::move(primes));
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Modulus& q = ctx.modulus(p.primes[k]);
    auto& r = p.residues[k];
    for (std::size_t i = 0; i < ctx.n(); ++i) r[i] = q.FromSigned(coeffs[i]);
    ctx.ntt(p.primes[k]).Forward(r);
  }
  return p;
}

RnsPoly FromCoefficients(const RlweContext& ctx, std::span<const long double> coeffs,
                         std::vector<std::size_t> primes) {
  RnsPoly p = ZeroPoly(ctx, std::move(primes));
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Modulus& q = ctx.modulus(p.primes[k]);
    auto& r = p.residues[k];
    for (std::size_t i = 0; i < ctx.n(); ++i) r[i] = q.FromIntegral(coeffs[i]);
    ctx.ntt(p.primes[k]).Forward(r);
  }
  return p;
}

void AddInPlace(const RlweContext& ctx, RnsPoly& a, const RnsPoly& b) {
  CheckSamePrimes(a, b);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Modulus& q = ctx.modulus(a.primes[k]);
    for (std::size_t i = 0; i < ctx.n(); ++i) a.residues[k][i] = q.Add(a.residues[k][i], b.residues[k][i]);
  }
}

void SubInPlace(const RlweContext& ctx, RnsPoly& a, const RnsPoly& b) {
  CheckSamePrimes(a, b);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Modulus& q = ctx.modulus(a.primes[k]);
    for (std::size_t i = 0; i < ctx.n(); ++i) a.residues[k][i] = q.Sub(a.residues[k][i], b.residues[k][i]);
  }
}

RnsPoly Multiply(const RlweContext& ctx, const RnsPoly& a, const RnsPoly& b) {
  CheckSamePrimes(a, b);
  RnsPoly out = a;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Modulus& q = ctx.modulus(a.primes[k]);
    for (std::size_t i = 0; i < ctx.n(); ++i) out.residues[k][i] = q.Mul(a.residues[k][i], b.residues[k][i]);
  }
  return out;
}

void MultiplyAccumulate(const RlweContext& ctx, RnsPoly& acc, const RnsPoly& a,
                        const RnsPoly& b) {
  CheckSamePrimes(acc, a);
  CheckSamePrimes(a, b);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Modulus& q = ctx.modulus(a.primes[k]);
    auto& r = acc.residues[k];
    for (std::size_t i = 0; i < ctx.n(); ++i) {
      r[i] = q.Add(r[i], q.Mul(a.residues[k][i], b.residues[k][i]));
    }
  }
}

// A constant polynomial is the same constant at every NTT evaluation point.
void AddConstantInPlace(const RlweContext& ctx, RnsPoly& a, long double k) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Modulus& q = ctx.modulus(a.primes[j]);
    const u64 c = q.FromIntegral(k);
    for (u64& x : a.residues[j]) x = q.Add(x, c);
  }
}

void MulConstantInPlace(const RlweContext& ctx, RnsPoly& a, long double k) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Modulus& q = ctx.modulus(a.primes[j]);
    const u64 c = q.FromIntegral(k);
    const u64 cs = ShoupPrecompute(c, q.value());
    for (u64& x : a.residues[j]) x = MulShoup(x, c, cs, q.value());
  }
}

void NegateInPlace(const RlweContext& ctx, RnsPoly& a) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Modulus& q = ctx.modulus(a.primes[j]);
    for (u64& x : a.residues[j]) x = q.Neg(x);
  }
}

RnsPoly Restrict(const RnsPoly& a, const std::vector<std::size_t>& primes) {
  RnsPoly out;
  out.primes = primes;
  for (std::size_t p : primes) {
    const auto it = std::find(a.primes.begin(), a.primes.end(), p);
    if (it == a.primes.end()) throw InvalidArgument("Restrict: prime not present");
    out.residues.push_back(a.residues[static_cast<std::size_t>(it - a.primes.begin())]);
  }
  return out;
}

RnsPoly DivideRoundByLast(const RlweContext& ctx, const RnsPoly& a) {
  if (a.size() < 2) throw InvalidArgument("DivideRoundByLast needs at least two primes");
  const std::size_t last = a.primes.back();
  const Modulus& p = ctx.modulus(last);
  std::vector<u64> top = a.residues.back();
  ctx.ntt(last).Inverse(top);
  RnsPoly out;
  out.primes.assign(a.primes.begin(), a.primes.end() - 1);
  out.residues.resize(out.primes.size());
  std::vector<u64> t(ctx.n());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Modulus& q = ctx.modulus(out.primes[k]);
    for (std::size_t i = 0; i < ctx.n(); ++i) t[i] = q.FromSigned(p.Centered(top[i]));
    ctx.ntt(out.primes[k]).Forward(t);
    const u64 inv = q.Inverse(p.value() % q.value());
    const u64 inv_s = ShoupPrecompute(inv, q.value());
    auto& r = out.residues[k];
    r.resize(ctx.n());
    for (std::size_t i = 0; i < ctx.n(); ++i) {
      r[i] = MulShoup(q.Sub(a.residues[k][i], t[i]), inv, inv_s, q.value());
    }
  }
  return out;
}

std::vector<long double> CenteredCoefficients(const RlweContext& ctx, const RnsPoly& a) {
  const std::size_t L = a.size();
  std::vector<std::vector<u64>> coeff = a.residues;
  for (std::size_t k = 0; k < L; ++k) ctx.ntt(a.primes[k]).Inverse(coeff[k]);
  // radix[k][j] = (q_0 ... q_{j-1}) mod q_k for j <= k; inv[k] = radix[k][k]^-1.
  std::vector<std::vector<u64>> radix(L);
  std::vector<u64> inv(L);
  std::vector<long double> weight(L);
  long double w = 1.0L;
  for (std::size_t k = 0; k < L; ++k) {
    const Modulus& qk = ctx.modulus(a.primes[k]);
    radix[k].resize(k + 1);
    u64 prod = 1;
    for (std::size_t j = 0; j <= k; ++j) {
      radix[k][j] = prod;
      if (j < k) prod = qk.Mul(prod, ctx.modulus(a.primes[j]).value() % qk.value());
    }
    inv[k] = qk.Inverse(radix[k][k]);
    weight[k] = w;
    w *= static_cast<long double>(qk.value());
  }
  std::vector<long double> out(ctx.n());
  std::vector<std::int64_t> digit(L);
  for (std::size_t i = 0; i < ctx.n(); ++i) {
    long double value = 0.0L;
    for (std::size_t k = 0; k < L; ++k) {
      const Modulus& qk = ctx.modulus(a.primes[k]);
      // Subtract the partial reconstruction, then divide by the radix.
      u64 partial = 0;
      for (std::size_t j = 0; j < k; ++j) {
        partial = qk.Add(partial, qk.Mul(qk.FromSigned(digit[j]), radix[k][j]));
      }
      digit[k] = qk.Centered(qk.Mul(qk.Sub(coeff[k][i], partial), inv[k]));
      value += static_cast<long double>(digit[k]) * weight[k];
    }
    out[i] = value;
  }
  return out;
}

}  // namespace encsynth::rlwe
