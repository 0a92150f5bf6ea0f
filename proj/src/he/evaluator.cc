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

#include "encsynth/he/evaluator.h"

#include <cmath>
#include <string>

namespace encsynth::he {

CipherValue Evaluator::Deserialize(ByteReader& in) const {
  const std::size_t start = in.offset();
  // Peek the framing to find the total length, then hand the exact span over.
  ByteReader probe = in;
  ReadCipherHeader(probe);
  const std::size_t length = probe.offset() - start;
  return Deserialize(in.Raw(length));
}

void CheckBackend(BackendKind expected, const CipherValue& c, const char* op) {
  if (c.backend != expected) {
    throw CipherMismatch(std::string(op) + ": ciphertext from backend " + BackendName(c.backend) +
                         ", evaluator is " + BackendName(expected));
  }
  if (!c.payload) throw CipherMismatch(std::string(op) + ": empty ciphertext");
}

void CheckSameLevelAndScale(const CipherValue& a, const CipherValue& b, const char* op) {
  if (a.level != b.level) {
    throw CipherMismatch(std::string(op) + ": level mismatch " + std::to_string(a.level) +
                         " vs " + std::to_string(b.level) + "; align levels first");
  }
  // Relative scale difference |2^(la - lb) - 1| <= ~1e-12.
  if (std::abs(a.log2_scale - b.log2_scale) > 1.5e-12) {
    throw CipherMismatch(std::string(op) + ": scale mismatch 2^" + std::to_string(a.log2_scale) +
                         " vs 2^" + std::to_string(b.log2_scale));
  }
}

void CheckPlaintextBound(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v) || std::abs(v) > kMaxPlaintextMagnitude) {
      throw DomainError("plaintext value " + std::to_string(v) + " outside [-2^20, 2^20]");
    }
  }
}

}  // namespace encsynth::he
