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

#ifndef ENCSYNTH_RLWE_KEY_HOLDER_H_
#define ENCSYNTH_RLWE_KEY_HOLDER_H_

#include <memory>

#include "encsynth/common/rng.h"
#include "encsynth/he/key_holder.h"
#include "encsynth/rlwe/encoder.h"
#include "encsynth/rlwe/evaluator.h"

namespace encsynth::rlwe {

// Client-side RLWE keys: ternary secret s, public key (-a s + e, a) and the
// relinearization key. Key material is a pure function of the seed.
class RlweKeyHolder : public he::KeyHolder {
 public:
  RlweKeyHolder(std::shared_ptr<const RlweContext> ctx, std::uint64_t seed);
  RlweKeyHolder(const he::HeProfile& profile, std::uint64_t seed)
      : RlweKeyHolder(MakeContext(profile), seed) {}

  he::BackendKind kind() const override { return he::BackendKind::kRlwe; }
  const he::Evaluator& evaluator() const override { return *evaluator_; }
  const RlweEvaluator& rlwe_evaluator() const { return *evaluator_; }
  const Encoder& encoder() const { return encoder_; }
  std::shared_ptr<const RlweEvalKey> eval_key() const { return eval_key_; }
  const RlweContext& context() const { return *ctx_; }

  // Fresh encryption at the top level. Each call draws new randomness.
  he::CipherValue Encrypt(std::span<const double> values) override;
  // Encryption with an explicit randomness stream.
  he::CipherValue EncryptWith(std::span<const double> values, Rng& rng) const;
  std::vector<double> Decrypt(const he::CipherValue& c) const override;
  // Centered coefficients of c0 + c1 s before decoding.
  std::vector<long double> DecryptCoefficients(const he::CipherValue& c) const;

 private:
  std::shared_ptr<const RlweContext> ctx_;
  Encoder encoder_;
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  RnsPoly secret_;  // all chain primes plus the special prime
  RnsPoly pk_b_, pk_a_;  // chain primes only
  std::shared_ptr<const RlweEvalKey> eval_key_;
  std::unique_ptr<RlweEvaluator> evaluator_;
};

}  // namespace encsynth::rlwe

#endif  // ENCSYNTH_RLWE_KEY_HOLDER_H_
