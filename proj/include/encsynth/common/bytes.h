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

#ifndef ENCSYNTH_COMMON_BYTES_H_
#define ENCSYNTH_COMMON_BYTES_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "encsynth/common/error.h"

namespace encsynth {

using Bytes = std::vector<std::uint8_t>;

// Thrown by ByteReader when the input ends early or holds an invalid value.
// `offset` is the position of the first byte that could not be consumed.
class MalformedInput : public Error {
 public:
  MalformedInput(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Little-endian append-only encoder.
class ByteWriter {
 public:
  explicit ByteWriter(Bytes& out) : out_(out) {}

  void U8(std::uint8_t v) { out_.push_back(v); }
  void U32(std::uint32_t v);
  void U64(std::uint64_t v);
  void I32(std::int32_t v) { U32(static_cast<std::uint32_t>(v)); }
  void F64(double v);
  void Raw(std::span<const std::uint8_t> data);
  // u32 length prefix followed by the bytes.
  void Blob(std::span<const std::uint8_t> data);
  void String(const std::string& s);

 private:
  Bytes& out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in, std::size_t base = 0)
      : in_(in), base_(base) {}

  std::uint8_t U8();
  std::uint32_t U32();
  std::uint64_t U64();
  std::int32_t I32() { return static_cast<std::int32_t>(U32()); }
  double F64();
  std::span<const std::uint8_t> Raw(std::size_t n);
  std::span<const std::uint8_t> Blob();
  std::string String();

  std::size_t offset() const { return base_ + pos_; }
  std::size_t remaining() const { return in_.size() - pos_; }
  bool done() const { return pos_ == in_.size(); }
  // Fails unless every byte has been consumed.
  void ExpectEnd() const;

 private:
  void Need(std::size_t n) const;

  std::span<const std::uint8_t> in_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

}  // namespace encsynth

#endif  // ENCSYNTH_COMMON_BYTES_H_
