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

#ifndef ENCSYNTH_HE_SLOT_BACKENDS_H_
#define ENCSYNTH_HE_SLOT_BACKENDS_H_

#include <cstdint>
#include <vector>

#include "encsynth/he/evaluator.h"

namespace encsynth::he {

// Payload of the exact and emulator backends: the slot values in the clear.
class SlotPayload : public CipherPayload {
 public:
  explicit SlotPayload(std::vector<double> slots) : slots_(std::move(slots)) {}
  const std::vector<double>& slots() const { return slots_; }
  // u32 count, then f64 values.
  void Serialize(Bytes& out) const override;
  static std::vector<double> Parse(std::span<const std::uint8_t> bytes, std::size_t base);

 private:
  std::vector<double> slots_;
};

const std::vector<double>& SlotsOf(const CipherValue& c);

// Plaintext arithmetic with unbounded levels and no noise. Rescale and
// AlignLevels leave values untouched, so a pipeline over this backend computes
// exactly the double-precision expression it encodes.
class ExactEvaluator : public Evaluator {
 public:
  explicit ExactEvaluator(HeProfile profile);

  BackendKind kind() const override { return BackendKind::kExact; }
  const HeProfile& profile() const override { return profile_; }
  int fresh_level() const override { return kUnboundedLevel; }

  CipherValue Add(const CipherValue& a, const CipherValue& b) const override;
  CipherValue AddPlain(const CipherValue& a, double p) const override;
  CipherValue Mul(const CipherValue& a, const CipherValue& b) const override;
  CipherValue MulPlain(const CipherValue& a, double p) const override;
  CipherValue Rescale(const CipherValue& a) const override;
  CipherValue AlignLevels(const CipherValue& a, int target_level) const override;
  CipherValue ConstantLike(double value, const CipherValue& like) const override;
  using Evaluator::Deserialize;
  CipherValue Deserialize(std::span<const std::uint8_t> bytes) const override;

  CipherValue Make(std::vector<double> slots) const;

 private:
  HeProfile profile_;
};

// Error injected by the emulator. Gaussian noise of standard deviation `sigma`
// is added to every slot by Encrypt and by each Add, AddPlain, Mul and
// MulPlain. Rescale adds uniform noise in [-rescale_bound, rescale_bound].
struct NoiseModel {
  double sigma = 0x1p-30;
  double rescale_bound = 0x1p-33;
  std::uint64_t seed = 0;

  static NoiseModel None() { return {0.0, 0.0, 0}; }
  bool operator==(const NoiseModel&) const = default;
};

// Scale and level bookkeeping of the approximate scheme without its
// cryptography. Every level has canonical scale Delta and each rescale divides
// by Delta exactly. Evaluation noise is a pure function of the noise seed, the
// operation and its inputs, so the evaluator is stateless and repeatable.
// With NoiseModel::None() results are bit-identical to ExactEvaluator.
class EmulatorEvaluator : public Evaluator {
 public:
  EmulatorEvaluator(HeProfile profile, NoiseModel noise);

  BackendKind kind() const override { return BackendKind::kEmulator; }
  const HeProfile& profile() const override { return profile_; }
  int fresh_level() const override { return profile_.usable_levels(); }
  const NoiseModel& noise() const { return noise_; }

  CipherValue Add(const CipherValue& a, const CipherValue& b) const override;
  CipherValue AddPlain(const CipherValue& a, double p) const override;
  CipherValue Mul(const CipherValue& a, const CipherValue& b) const override;
  CipherValue MulPlain(const CipherValue& a, double p) const override;
  CipherValue Rescale(const CipherValue& a) const override;
  CipherValue AlignLevels(const CipherValue& a, int target_level) const override;
  CipherValue ConstantLike(double value, const CipherValue& like) const override;
  using Evaluator::Deserialize;
  CipherValue Deserialize(std::span<const std::uint8_t> bytes) const override;

  CipherValue Make(std::vector<double> slots, int level, double log2_scale) const;

 private:
  // Adds op-keyed Gaussian noise to `slots`.
  void Perturb(std::vector<double>& slots, std::uint64_t op_key) const;

  HeProfile profile_;
  NoiseModel noise_;
};

// Standard normal from a 64-bit key (Box-Muller over two hashed uniforms).
double HashedGaussian(std::uint64_t key);
// Uniform in [-1, 1) from a 64-bit key.
double HashedUniform(std::uint64_t key);

}  // namespace encsynth::he

#endif  // ENCSYNTH_HE_SLOT_BACKENDS_H_
