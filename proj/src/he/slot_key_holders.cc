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

#include "encsynth/he/slot_key_holders.h"

#include "encsynth/common/rng.h"

namespace encsynth::he {

CipherValue ExactKeyHolder::Encrypt(std::span<const double> values) {
  CheckPlaintextBound(values);
  return static_cast<const ExactEvaluator&>(evaluator()).Make({values.begin(), values.end()});
}

std::vector<double> ExactKeyHolder::Decrypt(const CipherValue& c) const {
  CheckBackend(kind(), c, "Decrypt");
  return SlotsOf(c);
}

CipherValue EmulatorKeyHolder::Encrypt(std::span<const double> values) {
  CheckPlaintextBound(values);
  std::vector<double> slots(values.begin(), values.end());
  const NoiseModel& noise = evaluator_.noise();
  if (noise.sigma != 0.0) {
    // Distinct stream from the evaluator's op-keyed noise.
    const std::uint64_t key = Mix64(Mix64(noise.seed ^ 0x656e6372797074ull) ^ counter_);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      slots[i] += noise.sigma * HashedGaussian(key + i);
    }
  }
  ++counter_;
  return evaluator_.Make(std::move(slots), evaluator_.fresh_level(),
                         static_cast<double>(evaluator_.profile().log2_scale));
}

std::vector<double> EmulatorKeyHolder::Decrypt(const CipherValue& c) const {
  CheckBackend(kind(), c, "Decrypt");
  if (c.level < 0 || c.level > evaluator_.fresh_level()) {
    throw CipherMismatch("Decrypt: level outside the profile's budget");
  }
  return SlotsOf(c);
}

}  // namespace encsynth::he
