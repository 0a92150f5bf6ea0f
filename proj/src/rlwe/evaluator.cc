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

#include "encsynth/rlwe/evaluator.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace encsynth::rlwe {

using he::BackendKind;
using he::CipherValue;

namespace {

constexpr std::uint32_t kCipherMagic = 0x43574c52;  // "RLWC"
constexpr std::uint32_t kKeyMagic = 0x4b574c52;     // "RLWK"
// Scales within this log2 distance are treated as equal.
constexpr double kScaleSlack = 1e-10;

void WritePoly(ByteWriter& w, const RnsPoly& p) {
  for (const auto& r : p.residues) {
    for (u64 x : r) w.U64(x);
  }
}

RnsPoly ReadPoly(ByteReader& r, const RlweContext& ctx, std::vector<std::size_t> primes) {
  RnsPoly p = ZeroPoly(ctx, std::move(primes));
  for (std::size_t k = 0; k < p.size(); ++k) {
    const u64 q = ctx.modulus(p.primes[k]).value();
    for (u64& x : p.residues[k]) {
      const std::size_t at = r.offset();
      x = r.U64();
      if (x >= q) throw MalformedInput("residue not reduced modulo its prime", at);
    }
  }
  return p;
}

void ReadStamp(ByteReader& r) {
  const std::size_t at = r.offset();
  if (r.String() != kSecurityStamp) throw MalformedInput("missing security stamp", at);
}

}  // namespace

void RlwePayload::Serialize(Bytes& out) const {
  ByteWriter w(out);
  w.U32(kCipherMagic);
  w.String(kSecurityStamp);
  w.U64(params_hash_);
  w.U32(static_cast<std::uint32_t>(c0_.size()));
  w.F64(log2_scale_);
  w.U32(slots_);
  WritePoly(w, c0_);
  WritePoly(w, c1_);
}

const RlwePayload& RlweOf(const CipherValue& c) {
  const auto* p = dynamic_cast<const RlwePayload*>(c.payload.get());
  if (p == nullptr) throw he::CipherMismatch("ciphertext does not carry an RLWE payload");
  return *p;
}

Bytes SerializeEvalKey(const RlweContext& ctx, const RlweEvalKey& key) {
  Bytes out;
  ByteWriter w(out);
  w.U32(kKeyMagic);
  w.String(kSecurityStamp);
  w.U64(key.params_hash);
  w.U32(static_cast<std::uint32_t>(key.relin.size()));
  (void)ctx;
  for (const auto& [b, a] : key.relin) {
    WritePoly(w, b);
    WritePoly(w, a);
  }
  return out;
}

RlweEvalKey DeserializeEvalKey(const RlweContext& ctx, std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (r.U32() != kKeyMagic) throw MalformedInput("not an RLWE evaluation key", 0);
  ReadStamp(r);
  RlweEvalKey key;
  key.params_hash = r.U64();
  if (key.params_hash != ctx.params().hash) {
    throw MalformedInput("evaluation key was made for different parameters", r.offset() - 8);
  }
  const std::size_t at = r.offset();
  const std::uint32_t digits = r.U32();
  if (digits != ctx.params().chain.size()) {
    throw MalformedInput("evaluation key digit count does not match the chain", at);
  }
  const std::vector<std::size_t> primes = ChainPrimes(ctx, ctx.params().max_level(), true);
  for (std::uint32_t i = 0; i < digits; ++i) {
    RnsPoly b = ReadPoly(r, ctx, primes);
    RnsPoly a = ReadPoly(r, ctx, primes);
    key.relin.emplace_back(std::move(b), std::move(a));
  }
  r.ExpectEnd();
  return key;
}

RlweEvaluator::RlweEvaluator(std::shared_ptr<const RlweContext> ctx,
                             std::shared_ptr<const RlweEvalKey> key)
    : ctx_(std::move(ctx)), key_(std::move(key)) {
  if (!ctx_) throw InvalidArgument("RlweEvaluator: null context");
  if (key_ && key_->params_hash != ctx_->params().hash) {
    throw InvalidArgument("RlweEvaluator: evaluation key was made for different parameters");
  }
}

double RlweEvaluator::CanonicalLog2Scale(int level) const {
  return static_cast<double>(std::log2(ctx_->params().scales.at(static_cast<std::size_t>(level))));
}

CipherValue RlweEvaluator::Make(RnsPoly c0, RnsPoly c1, std::uint32_t slots, int level,
                                double log2_scale) const {
  return {BackendKind::kRlwe, log2_scale, level,
          std::make_shared<RlwePayload>(std::move(c0), std::move(c1), slots, log2_scale,
                                        ctx_->params().hash)};
}

void RlweEvaluator::CheckCanonical(const CipherValue& a, const char* op) const {
  if (std::abs(a.log2_scale - CanonicalLog2Scale(a.level)) > kScaleSlack) {
    throw PreconditionError(std::string(op) + ": ciphertext must be rescaled first (scale 2^" +
                            std::to_string(a.log2_scale) + ")");
  }
}

CipherValue RlweEvaluator::Add(const CipherValue& a, const CipherValue& b) const {
  he::CheckBackend(kind(), a, "Add");
  he::CheckBackend(kind(), b, "Add");
  he::CheckSameLevelAndScale(a, b, "Add");
  const RlwePayload& pa = RlweOf(a);
  const RlwePayload& pb = RlweOf(b);
  RnsPoly c0 = pa.c0();
  RnsPoly c1 = pa.c1();
  AddInPlace(*ctx_, c0, pb.c0());
  AddInPlace(*ctx_, c1, pb.c1());
  return Make(std::move(c0), std::move(c1), std::max(pa.slots(), pb.slots()), a.level,
              a.log2_scale);
}

CipherValue RlweEvaluator::AddPlain(const CipherValue& a, double p) const {
  he::CheckBackend(kind(), a, "AddPlain");
  const RlwePayload& pa = RlweOf(a);
  RnsPoly c0 = pa.c0();
  AddConstantInPlace(*ctx_, c0, std::round(static_cast<long double>(p) * std::exp2l(a.log2_scale)));
  return Make(std::move(c0), pa.c1(), pa.slots(), a.level, a.log2_scale);
}

std::pair<RnsPoly, RnsPoly> RlweEvaluator::Relinearize(const RnsPoly& d2, int level) const {
  if (!key_) throw PreconditionError("Mul: evaluator has no relinearization key");
  const RlweContext& ctx = *ctx_;
  const std::vector<std::size_t> ext = ChainPrimes(ctx, level, true);
  const std::size_t key_special = static_cast<std::size_t>(ctx.params().max_level()) + 1;
  RnsPoly acc0 = ZeroPoly(ctx, ext);
  RnsPoly acc1 = ZeroPoly(ctx, ext);
  std::vector<u64> coeff(ctx.n());
  std::vector<u64> lifted(ctx.n());
  for (int i = 0; i <= level; ++i) {
    const Modulus& qi = ctx.modulus(static_cast<std::size_t>(i));
    coeff = d2.residues[static_cast<std::size_t>(i)];
    ctx.ntt(static_cast<std::size_t>(i)).Inverse(coeff);
    const auto& [b, a] = key_->relin[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < ext.size(); ++k) {
      const std::size_t prime = ext[k];
      const Modulus& q = ctx.modulus(prime);
      const std::vector<u64>* digit = &d2.residues[static_cast<std::size_t>(i)];
      if (prime != static_cast<std::size_t>(i)) {
        for (std::size_t j = 0; j < ctx.n(); ++j) lifted[j] = q.FromSigned(qi.Centered(coeff[j]));
        ctx.ntt(prime).Forward(lifted);
        digit = &lifted;
      }
      const std::size_t key_pos = prime == ctx.special_index() ? key_special : prime;
      const auto& bk = b.residues[key_pos];
      const auto& ak = a.residues[key_pos];
      auto& r0 = acc0.residues[k];
      auto& r1 = acc1.residues[k];
      for (std::size_t j = 0; j < ctx.n(); ++j) {
        r0[j] = q.Add(r0[j], q.Mul((*digit)[j], bk[j]));
        r1[j] = q.Add(r1[j], q.Mul((*digit)[j], ak[j]));
      }
    }
  }
  return {DivideRoundByLast(ctx, acc0), DivideRoundByLast(ctx, acc1)};
}

CipherValue RlweEvaluator::Mul(const CipherValue& a, const CipherValue& b) const {
  he::CheckBackend(kind(), a, "Mul");
  he::CheckBackend(kind(), b, "Mul");
  if (a.level != b.level) {
    throw he::CipherMismatch("Mul: level mismatch " + std::to_string(a.level) + " vs " +
                             std::to_string(b.level) + "; align levels first");
  }
  if (a.level < 1) throw he::LevelExhausted("Mul", a.level);
  const RlwePayload& pa = RlweOf(a);
  const RlwePayload& pb = RlweOf(b);
  RnsPoly d0 = Multiply(*ctx_, pa.c0(), pb.c0());
  RnsPoly d1 = Multiply(*ctx_, pa.c0(), pb.c1());
  MultiplyAccumulate(*ctx_, d1, pa.c1(), pb.c0());
  const RnsPoly d2 = Multiply(*ctx_, pa.c1(), pb.c1());
  auto [k0, k1] = Relinearize(d2, a.level);
  AddInPlace(*ctx_, d0, k0);
  AddInPlace(*ctx_, d1, k1);
  return Make(std::move(d0), std::move(d1), std::max(pa.slots(), pb.slots()), a.level,
              a.log2_scale + b.log2_scale);
}

CipherValue RlweEvaluator::MulPlain(const CipherValue& a, double p) const {
  he::CheckBackend(kind(), a, "MulPlain");
  if (a.level < 1) throw he::LevelExhausted("MulPlain", a.level);
  CheckCanonical(a, "MulPlain");
  const auto& params = ctx_->params();
  const long double target = params.scales[static_cast<std::size_t>(a.level - 1)] *
                             static_cast<long double>(params.chain[static_cast<std::size_t>(a.level)]);
  const long double plain_scale = target / std::exp2l(a.log2_scale);
  const RlwePayload& pa = RlweOf(a);
  RnsPoly c0 = pa.c0();
  RnsPoly c1 = pa.c1();
  const long double k = std::round(static_cast<long double>(p) * plain_scale);
  MulConstantInPlace(*ctx_, c0, k);
  MulConstantInPlace(*ctx_, c1, k);
  return Make(std::move(c0), std::move(c1), pa.slots(), a.level,
              static_cast<double>(std::log2(target)));
}

CipherValue RlweEvaluator::Rescale(const CipherValue& a) const {
  he::CheckBackend(kind(), a, "Rescale");
  if (a.level < 1) throw he::LevelExhausted("Rescale", a.level);
  const auto& params = ctx_->params();
  const double drop = static_cast<double>(
      std::log2(static_cast<long double>(params.chain[static_cast<std::size_t>(a.level)])));
  double result = a.log2_scale - drop;
  const double canonical = CanonicalLog2Scale(a.level - 1);
  if (std::abs(std::exp2(result - canonical) - 1.0) > 0x1p-20) {
    throw PreconditionError("Rescale: scale 2^" + std::to_string(a.log2_scale) +
                            " is not a product at level " + std::to_string(a.level));
  }
  if (std::abs(result - canonical) <= kScaleSlack) result = canonical;
  const RlwePayload& pa = RlweOf(a);
  return Make(DivideRoundByLast(*ctx_, pa.c0()), DivideRoundByLast(*ctx_, pa.c1()), pa.slots(),
              a.level - 1, result);
}

CipherValue RlweEvaluator::AlignLevels(const CipherValue& a, int target_level) const {
  he::CheckBackend(kind(), a, "AlignLevels");
  if (target_level < 0 || target_level > a.level) {
    throw PreconditionError("AlignLevels: cannot move from level " + std::to_string(a.level) +
                            " to " + std::to_string(target_level));
  }
  CheckCanonical(a, "AlignLevels");
  if (target_level == a.level) return a;
  const auto& params = ctx_->params();
  const std::vector<std::size_t> keep = ChainPrimes(*ctx_, target_level + 1, false);
  const RlwePayload& pa = RlweOf(a);
  RnsPoly c0 = Restrict(pa.c0(), keep);
  RnsPoly c1 = Restrict(pa.c1(), keep);
  const long double k = std::round(
      params.scales[static_cast<std::size_t>(target_level)] *
      static_cast<long double>(params.chain[static_cast<std::size_t>(target_level + 1)]) /
      params.scales[static_cast<std::size_t>(a.level)]);
  MulConstantInPlace(*ctx_, c0, k);
  MulConstantInPlace(*ctx_, c1, k);
  return Make(DivideRoundByLast(*ctx_, c0), DivideRoundByLast(*ctx_, c1), pa.slots(),
              target_level, CanonicalLog2Scale(target_level));
}

CipherValue RlweEvaluator::ConstantLike(double value, const CipherValue& like) const {
  he::CheckBackend(kind(), like, "ConstantLike");
  const RlwePayload& pl = RlweOf(like);
  RnsPoly c0 = ZeroPoly(*ctx_, pl.c0().primes);
  AddConstantInPlace(*ctx_, c0,
                     std::round(static_cast<long double>(value) * std::exp2l(like.log2_scale)));
  return Make(std::move(c0), ZeroPoly(*ctx_, pl.c1().primes), pl.slots(), like.level,
              like.log2_scale);
}

CipherValue RlweEvaluator::Deserialize(std::span<const std::uint8_t> bytes) const {
  ByteReader outer(bytes);
  const he::CipherHeader h = he::ReadCipherHeader(outer);
  outer.ExpectEnd();
  if (h.backend != kind()) throw MalformedInput("ciphertext is not from the RLWE backend", 0);
  ByteReader r(h.payload, h.payload_offset);
  if (r.U32() != kCipherMagic) throw MalformedInput("bad RLWE ciphertext magic", h.payload_offset);
  ReadStamp(r);
  std::size_t at = r.offset();
  if (r.U64() != ctx_->params().hash) {
    throw MalformedInput("ciphertext was made for different parameters", at);
  }
  at = r.offset();
  const std::uint32_t chain_length = r.U32();
  if (chain_length < 1 || chain_length > ctx_->params().chain.size() ||
      static_cast<int>(chain_length) != h.level + 1) {
    throw MalformedInput("chain length does not match the level", at);
  }
  at = r.offset();
  if (r.F64() != h.log2_scale) throw MalformedInput("scale does not match the header", at);
  at = r.offset();
  const std::uint32_t slots = r.U32();
  if (slots > ctx_->params().slots()) throw MalformedInput("slot count above n/2", at);
  const std::vector<std::size_t> primes = ChainPrimes(*ctx_, h.level, false);
  RnsPoly c0 = ReadPoly(r, *ctx_, primes);
  RnsPoly c1 = ReadPoly(r, *ctx_, primes);
  r.ExpectEnd();
  return Make(std::move(c0), std::move(c1), slots, h.level, h.log2_scale);
}

}  // namespace encsynth::rlwe
