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

#ifndef ENCSYNTH_HE_EVALUATOR_H_
#define ENCSYNTH_HE_EVALUATOR_H_

#include <span>
#include <vector>

#include "encsynth/he/cipher.h"
#include "encsynth/he/profile.h"

namespace encsynth::he {

// Server-side ciphertext arithmetic. Holds no secret material.
//
// Level and scale rules shared by all backends:
//   Add            equal level and scale; result keeps both.
//   Mul            equal level >= 1; scale is the product, level unchanged.
//   MulPlain       level >= 1; the scalar is encoded so that the following
//                  Rescale lands on the canonical scale of level - 1.
//   Rescale        level >= 1 and a product-sized scale; level drops by 1.
//   AlignLevels    lowers a rescaled ciphertext to a smaller level without a
//                  ciphertext multiplication.
// Violations throw CipherMismatch or PreconditionError; missing levels throw
// LevelExhausted.
class Evaluator {
 public:
  virtual ~Evaluator() = default;

  virtual BackendKind kind() const = 0;
  virtual const HeProfile& profile() const = 0;
  // Level of fresh encryptions.
  virtual int fresh_level() const = 0;

  virtual CipherValue Add(const CipherValue& a, const CipherValue& b) const = 0;
  virtual CipherValue AddPlain(const CipherValue& a, double p) const = 0;
  virtual CipherValue Mul(const CipherValue& a, const CipherValue& b) const = 0;
  virtual CipherValue MulPlain(const CipherValue& a, double p) const = 0;
  virtual CipherValue Rescale(const CipherValue& a) const = 0;
  virtual CipherValue AlignLevels(const CipherValue& a, int target_level) const = 0;
  // Noise-free encryption of `value` in every slot at the level and scale of
  // `like`, so it can be added to it.
  virtual CipherValue ConstantLike(double value, const CipherValue& like) const = 0;
  virtual CipherValue Deserialize(std::span<const std::uint8_t> bytes) const = 0;

  CipherValue Deserialize(ByteReader& in) const;
};

// Shared argument checks.
void CheckBackend(BackendKind expected, const CipherValue& c, const char* op);
void CheckSameLevelAndScale(const CipherValue& a, const CipherValue& b, const char* op);
void CheckPlaintextBound(std::span<const double> values);

}  // namespace encsynth::he

#endif  // ENCSYNTH_HE_EVALUATOR_H_
