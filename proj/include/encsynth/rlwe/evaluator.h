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

#ifndef ENCSYNTH_RLWE_EVALUATOR_H_
#define ENCSYNTH_RLWE_EVALUATOR_H_

#include <memory>
#include <span>
#include <vector>

#include "encsynth/common/bytes.h"
#include "encsynth/he/evaluator.h"
#include "encsynth/rlwe/poly.h"

namespace encsynth::rlwe {

// Ciphertext body: (c0, c1) with c0 + c1 s = Delta m + e over primes 0..level.
//
// Wire form (little-endian): u32 magic "RLWC", string security stamp, u64
// params hash, u32 chain length, f64 log2 scale, u32 used slots, then the
// residues of c0 and then c1, prime by prime, n u64 words each (NTT domain).
class RlwePayload : public he::CipherPayload {
 public:
  RlwePayload(RnsPoly c0, RnsPoly c1, std::uint32_t slots, double log2_scale,
              std::uint64_t params_hash)
      : c0_(std::move(c0)), c1_(std::move(c1)), slots_(slots), log2_scale_(log2_scale),
        params_hash_(params_hash) {}

  const RnsPoly& c0() const { return c0_; }
  const RnsPoly& c1() const { return c1_; }
  std::uint32_t slots() const { return slots_; }
  void Serialize(Bytes& out) const override;

 private:
  RnsPoly c0_, c1_;
  std::uint32_t slots_;
  double log2_scale_;
  std::uint64_t params_hash_;
};

const RlwePayload& RlweOf(const he::CipherValue& c);

// Relinearization key: one (b_i, a_i) pair per chain prime, over every chain
// prime plus the special prime P, with b_i = -a_i s + e_i + [q_i] P s^2.
struct RlweEvalKey {
  std::uint64_t params_hash = 0;
  std::vector<std::pair<RnsPoly, RnsPoly>> relin;
};

// u32 magic "RLWK", string security stamp, u64 params hash, u32 digit count,
// then b_i and a_i residues as in the ciphertext format.
Bytes SerializeEvalKey(const RlweContext& ctx, const RlweEvalKey& key);
RlweEvalKey DeserializeEvalKey(const RlweContext& ctx, std::span<const std::uint8_t> bytes);

// Server-side RLWE arithmetic. Holds the public relinearization key only.
class RlweEvaluator : public he::Evaluator {
 public:
  RlweEvaluator(std::shared_ptr<const RlweContext> ctx, std::shared_ptr<const RlweEvalKey> key);

  he::BackendKind kind() const override { return he::BackendKind::kRlwe; }
  const he::HeProfile& profile() const override { return ctx_->params().profile; }
  int fresh_level() const override { return ctx_->params().max_level(); }
  const RlweContext& context() const { return *ctx_; }
  std::shared_ptr<const RlweContext> shared_context() const { return ctx_; }

  he::CipherValue Add(const he::CipherValue& a, const he::CipherValue& b) const override;
  he::CipherValue AddPlain(const he::CipherValue& a, double p) const override;
  // Tensor product followed by relinearization back to two components.
  he::CipherValue Mul(const he::CipherValue& a, const he::CipherValue& b) const override;
  // Encodes p at the scale that makes the following Rescale land on the
  // canonical scale of the next level.
  he::CipherValue MulPlain(const he::CipherValue& a, double p) const override;
  // Divides by the top chain prime.
  he::CipherValue Rescale(const he::CipherValue& a) const override;
  // Drops primes down to target + 1, multiplies by an integer close to
  // Delta_target q_{target+1} / Delta_level and rescales once.
  he::CipherValue AlignLevels(const he::CipherValue& a, int target_level) const override;
  he::CipherValue ConstantLike(double value, const he::CipherValue& like) const override;
  using he::Evaluator::Deserialize;
  he::CipherValue Deserialize(std::span<const std::uint8_t> bytes) const override;

  he::CipherValue Make(RnsPoly c0, RnsPoly c1, std::uint32_t slots, int level,
                       double log2_scale) const;
  double CanonicalLog2Scale(int level) const;

 private:
  std::pair<RnsPoly, RnsPoly> Relinearize(const RnsPoly& d2, int level) const;
  void CheckCanonical(const he::CipherValue& a, const char* op) const;

  std::shared_ptr<const RlweContext> ctx_;
  std::shared_ptr<const RlweEvalKey> key_;
};

}  // namespace encsynth::rlwe

#endif  // ENCSYNTH_RLWE_EVALUATOR_H_
