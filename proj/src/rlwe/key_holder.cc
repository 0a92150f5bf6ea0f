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

#include "encsynth/rlwe/key_holder.h"

#include <cmath>
#include <numbers>

namespace encsynth::rlwe {
namespace {

enum Stream : std::uint64_t { kSecretStream = 1, kPublicStream, kRelinStream, kEncryptStream };

std::vector<std::int64_t> SampleTernary(Rng& rng, std::size_t n) {
  std::vector<std::int64_t> out(n);
  for (auto& x : out) x = static_cast<std::int64_t>(UniformIndex(rng, 3)) - 1;
  return out;
}

// Rounded Gaussian, truncated at 6 sigma.
std::vector<std::int64_t> SampleError(Rng& rng, std::size_t n, double sigma) {
  std::vector<std::int64_t> out(n);
  for (auto& x : out) {
    double v;
    do {
      // Box-Muller over the portable uniform, one output per draw pair.
      const double u1 = 1.0 - UniformUnit(rng);
      const double u2 = UniformUnit(rng);
      v = sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    } while (std::abs(v) > 6.0 * sigma);
    x = std::llround(v);
  }
  return out;
}

RnsPoly SampleUniform(const RlweContext& ctx, Rng& rng, std::vector<std::size_t> primes) {
  RnsPoly p = ZeroPoly(ctx, std::move(primes));
  for (std::size_t k = 0; k < p.size(); ++k) {
    const u64 q = ctx.modulus(p.primes[k]).value();
    const u64 limit = ~u64{0} - (~u64{0} % q);
    for (u64& x : p.residues[k]) {
      u64 r;
      do {
        r = rng();
      } while (r >= limit);
      x = r % q;  // uniform in NTT form as well
    }
  }
  return p;
}

}  // namespace

RlweKeyHolder::RlweKeyHolder(std::shared_ptr<const RlweContext> ctx, std::uint64_t seed)
    : ctx_(std::move(ctx)), encoder_(ctx_->n()), seed_(seed) {
  const RlweContext& c = *ctx_;
  const std::size_t n = c.n();
  const int top = c.params().max_level();
  const std::vector<std::size_t> all = ChainPrimes(c, top, true);
  const std::vector<std::size_t> chain = ChainPrimes(c, top, false);

  Rng secret_rng = MakeRng(seed, {kSecretStream});
  secret_ = FromCoefficients(c, SampleTernary(secret_rng, n), all);

  Rng pk_rng = MakeRng(seed, {kPublicStream});
  pk_a_ = SampleUniform(c, pk_rng, chain);
  pk_b_ = FromCoefficients(c, SampleError(pk_rng, n, c.params().sigma), chain);
  SubInPlace(c, pk_b_, Multiply(c, pk_a_, Restrict(secret_, chain)));

  auto key = std::make_shared<RlweEvalKey>();
  key->params_hash = c.params().hash;
  Rng relin_rng = MakeRng(seed, {kRelinStream});
  const RnsPoly s2 = Multiply(c, secret_, secret_);
  for (int i = 0; i <= top; ++i) {
    RnsPoly a = SampleUniform(c, relin_rng, all);
    RnsPoly b = FromCoefficients(c, SampleError(relin_rng, n, c.params().sigma), all);
    SubInPlace(c, b, Multiply(c, a, secret_));
    // + P s^2 in the residue of q_i only.
    const Modulus& qi = c.modulus(static_cast<std::size_t>(i));
    const u64 p_mod = c.params().special % qi.value();
    auto& bi = b.residues[static_cast<std::size_t>(i)];
    const auto& si = s2.residues[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < n; ++j) bi[j] = qi.Add(bi[j], qi.Mul(p_mod, si[j]));
    key->relin.emplace_back(std::move(b), std::move(a));
  }
  eval_key_ = key;
  evaluator_ = std::make_unique<RlweEvaluator>(ctx_, eval_key_);
}

he::CipherValue RlweKeyHolder::Encrypt(std::span<const double> values) {
  Rng rng = MakeRng(seed_, {kEncryptStream, counter_++});
  return EncryptWith(values, rng);
}

he::CipherValue RlweKeyHolder::EncryptWith(std::span<const double> values, Rng& rng) const {
  he::CheckPlaintextBound(values);
  const RlweContext& c = *ctx_;
  const std::size_t n = c.n();
  const int top = c.params().max_level();
  const std::vector<std::size_t> chain = ChainPrimes(c, top, false);
  const long double scale = c.params().scales[static_cast<std::size_t>(top)];
  const RnsPoly m = FromCoefficients(c, encoder_.Encode(values, scale), chain);
  const RnsPoly v = FromCoefficients(c, SampleTernary(rng, n), chain);
  RnsPoly c0 = FromCoefficients(c, SampleError(rng, n, c.params().sigma), chain);
  RnsPoly c1 = FromCoefficients(c, SampleError(rng, n, c.params().sigma), chain);
  MultiplyAccumulate(c, c0, pk_b_, v);
  AddInPlace(c, c0, m);
  MultiplyAccumulate(c, c1, pk_a_, v);
  return evaluator_->Make(std::move(c0), std::move(c1), static_cast<std::uint32_t>(values.size()),
                          top, evaluator_->CanonicalLog2Scale(top));
}

std::vector<long double> RlweKeyHolder::DecryptCoefficients(const he::CipherValue& c) const {
  he::CheckBackend(kind(), c, "Decrypt");
  const RlwePayload& p = RlweOf(c);
  RnsPoly m = p.c0();
  MultiplyAccumulate(*ctx_, m, p.c1(), Restrict(secret_, p.c1().primes));
  return CenteredCoefficients(*ctx_, m);
}

std::vector<double> RlweKeyHolder::Decrypt(const he::CipherValue& c) const {
  std::vector<double> slots = encoder_.Decode(DecryptCoefficients(c), std::exp2l(c.log2_scale));
  slots.resize(RlweOf(c).slots());
  return slots;
}

}  // namespace encsynth::rlwe
