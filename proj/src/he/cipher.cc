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

#include "encsynth/he/cipher.h"

#include <cmath>

namespace encsynth::he {

const char* BackendName(BackendKind kind) {
  switch (kind) {
    case BackendKind::kExact:
      return "exact";
    case BackendKind::kEmulator:
      return "emulator";
    case BackendKind::kRlwe:
      return "rlwe";
  }
  return "unknown";
}

BackendKind ParseBackend(const std::string& name) {
  if (name == "exact") return BackendKind::kExact;
  if (name == "emulator") return BackendKind::kEmulator;
  if (name == "rlwe") return BackendKind::kRlwe;
  throw InvalidArgument("unknown backend '" + name + "' (expected exact, emulator or rlwe)");
}

double CipherValue::scale() const { return std::exp2(log2_scale); }

LevelExhausted::LevelExhausted(const std::string& op, int level)
    : Error(op + ": no level left"), trace_{op + " at level " + std::to_string(level)} {
  message_ = std::string(Error::what()) + " [" + trace_.front() + "]";
}

LevelExhausted& LevelExhausted::Within(const std::string& stage) {
  trace_.push_back(stage);
  message_ += " in " + stage;
  return *this;
}

void SerializeCipher(const CipherValue& c, Bytes& out) {
  ByteWriter w(out);
  w.U8(static_cast<std::uint8_t>(c.backend));
  w.F64(c.log2_scale);
  w.I32(c.level);
  Bytes body;
  if (c.payload) c.payload->Serialize(body);
  w.Blob(body);
}

Bytes SerializeCipher(const CipherValue& c) {
  Bytes out;
  SerializeCipher(c, out);
  return out;
}

CipherHeader ReadCipherHeader(ByteReader& in) {
  const std::size_t tag_offset = in.offset();
  const std::uint8_t tag = in.U8();
  if (tag > static_cast<std::uint8_t>(BackendKind::kRlwe)) {
    throw MalformedInput("unknown ciphertext backend tag " + std::to_string(tag), tag_offset);
  }
  CipherHeader h{static_cast<BackendKind>(tag), 0.0, 0, {}, 0};
  const std::size_t scale_offset = in.offset();
  h.log2_scale = in.F64();
  if (!std::isfinite(h.log2_scale)) throw MalformedInput("non-finite ciphertext scale", scale_offset);
  const std::size_t level_offset = in.offset();
  h.level = in.I32();
  if (h.level < 0) throw MalformedInput("negative ciphertext level", level_offset);
  h.payload_offset = in.offset() + 4;
  h.payload = in.Blob();
  return h;
}

}  // namespace encsynth::he
