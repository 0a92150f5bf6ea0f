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

#include "encsynth/he/key_holder.h"

namespace encsynth::he {

CipherValue KeyHolder::EncryptScalar(double value) {
  const double v[1] = {value};
  return Encrypt(v);
}

double KeyHolder::DecryptScalar(const CipherValue& c) const { return Decrypt(c).at(0); }

CipherValue KeyHolder::Refresh(const CipherValue& c) { return Encrypt(Decrypt(c)); }

}  // namespace encsynth::he
