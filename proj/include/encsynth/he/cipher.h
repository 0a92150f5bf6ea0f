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

#ifndef ENCSYNTH_HE_CIPHER_H_
#define ENCSYNTH_HE_CIPHER_H_

#include <climits>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "encsynth/common/bytes.h"
#include "encsynth/common/error.h"

namespace encsynth::he {

enum class BackendKind : std::uint8_t { kExact = 0, kEmulator = 1, kRlwe = 2 };

const char* BackendName(BackendKind kind);
// Accepts "exact", "emulator", "rlwe".
BackendKind ParseBackend(const std::string& name);

// Level of every exact-backend ciphertext: rescaling never runs out.
inline constexpr int kUnboundedLevel = INT_MAX;

// Backend-specific ciphertext body.
class CipherPayload {
 public:
  virtual ~CipherPayload() = default;
  virtual void Serialize(Bytes& out) const = 0;
};

// An encrypted real scalar or slot vector. Values are immutable; every
// operation returns a new CipherValue.
struct CipherValue {
  BackendKind backend = BackendKind::kExact;
  // log2 of the current scale. Kept in the log domain so the wire form is
  // exact.
  double log2_scale = 0.0;
  int level = 0;
  std::shared_ptr<const CipherPayload> payload;

  double scale() const;
};

// Raised when an operation needs a level the ciphertext no longer has.
// `trace` lists the failing operation first, then the enclosing pipeline
// stages outward.
class LevelExhausted : public Error {
 public:
  LevelExhausted(const std::string& op, int level);
  const std::vector<std::string>& trace() const { return trace_; }
  // Appends an enclosing stage and returns *this for rethrow.
  LevelExhausted& Within(const std::string& stage);
  const char* what() const noexcept override { return message_.c_str(); }

 private:
  std::vector<std::string> trace_;
  std::string message_;
};

// Operands from different backends, or with mismatched scale or level.
class CipherMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Wire form: u8 backend tag, f64 log2 scale, i32 level, u32 payload length,
// payload bytes. All little-endian.
void SerializeCipher(const CipherValue& c, Bytes& out);
Bytes SerializeCipher(const CipherValue& c);

struct CipherHeader {
  BackendKind backend;
  double log2_scale;
  int level;
  std::span<const std::uint8_t> payload;
  // Offset of the payload inside the enclosing reader's input.
  std::size_t payload_offset;
};
// Reads the framing above; throws MalformedInput on truncation or an unknown
// backend tag.
CipherHeader ReadCipherHeader(ByteReader& in);

}  // namespace encsynth::he

#endif  // ENCSYNTH_HE_CIPHER_H_
