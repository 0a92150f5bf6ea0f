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

#ifndef ENCSYNTH_HE_SLOT_KEY_HOLDERS_H_
#define ENCSYNTH_HE_SLOT_KEY_HOLDERS_H_

#include <cstdint>
#include <vector>

#include "encsynth/he/key_holder.h"
#include "encsynth/he/slot_backends.h"

namespace encsynth::he {

// Key-holder counterparts. Their Encrypt methods draw fresh noise from an
// internal counter, so repeated encryptions of one value differ.
class ExactKeyHolder : public KeyHolder {
 public:
  explicit ExactKeyHolder(HeProfile profile) : evaluator_(std::move(profile)) {}
  BackendKind kind() const override { return BackendKind::kExact; }
  const Evaluator& evaluator() const override { return evaluator_; }
  CipherValue Encrypt(std::span<const double> values) override;
  std::vector<double> Decrypt(const CipherValue& c) const override;

 private:
  ExactEvaluator evaluator_;
};

class EmulatorKeyHolder : public KeyHolder {
 public:
  EmulatorKeyHolder(HeProfile profile, NoiseModel noise)
      : evaluator_(std::move(profile), noise) {}
  BackendKind kind() const override { return BackendKind::kEmulator; }
  const Evaluator& evaluator() const override { return evaluator_; }
  CipherValue Encrypt(std::span<const double> values) override;
  std::vector<double> Decrypt(const CipherValue& c) const override;

 private:
  EmulatorEvaluator evaluator_;
  std::uint64_t counter_ = 0;
};

}  // namespace encsynth::he

#endif  // ENCSYNTH_HE_SLOT_KEY_HOLDERS_H_
