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

#ifndef ENCSYNTH_HE_KEY_HOLDER_H_
#define ENCSYNTH_HE_KEY_HOLDER_H_

#include <span>
#include <vector>

#include "encsynth/he/evaluator.h"

namespace encsynth::he {

// Client-side key owner: the only place where decryption happens.
class KeyHolder {
 public:
  virtual ~KeyHolder() = default;

  virtual BackendKind kind() const = 0;
  virtual const Evaluator& evaluator() const = 0;

  // Fresh ciphertext (level fresh_level(), scale 2^log2_scale). Throws
  // DomainError when a value exceeds kMaxPlaintextMagnitude.
  virtual CipherValue Encrypt(std::span<const double> values) = 0;
  virtual std::vector<double> Decrypt(const CipherValue& c) const = 0;

  CipherValue EncryptScalar(double value);
  double DecryptScalar(const CipherValue& c) const;
  // Decrypts and re-encrypts at the fresh level.
  CipherValue Refresh(const CipherValue& c);
};

}  // namespace encsynth::he

#endif  // ENCSYNTH_HE_KEY_HOLDER_H_
