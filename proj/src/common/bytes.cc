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

#include "encsynth/common/bytes.h"

#include <bit>
#include <cstring>

namespace encsynth {

void ByteWriter::U32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::U64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::Raw(std::span<const std::uint8_t> data) {
  out_.insert(out_.end(), data.begin(), data.end());
}

void ByteWriter::Blob(std::span<const std::uint8_t> data) {
  U32(static_cast<std::uint32_t>(data.size()));
  Raw(data);
}

void ByteWriter::String(const std::string& s) {
  Blob(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

void ByteReader::Need(std::size_t n) const {
  if (in_.size() - pos_ < n) {
    throw MalformedInput("truncated input: need " + std::to_string(n) +
                             " bytes, have " + std::to_string(in_.size() - pos_),
                         offset());
  }
}

std::uint8_t ByteReader::U8() {
  Need(1);
  return in_[pos_++];
}

std::uint32_t ByteReader::U32() {
  Need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_ + i]) << (8 * i);
  pos_ += 4;
  return v;
}

std::uint64_t ByteReader::U64() {
  Need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
  pos_ += 8;
  return v;
}

double ByteReader::F64() { return std::bit_cast<double>(U64()); }

std::span<const std::uint8_t> ByteReader::Raw(std::size_t n) {
  Need(n);
  auto out = in_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::span<const std::uint8_t> ByteReader::Blob() {
  const std::size_t at = offset();
  const std::uint32_t n = U32();
  if (remaining() < n) {
    throw MalformedInput("blob length " + std::to_string(n) + " exceeds input", at);
  }
  return Raw(n);
}

std::string ByteReader::String() {
  auto b = Blob();
  return std::string(b.begin(), b.end());
}

void ByteReader::ExpectEnd() const {
  if (!done()) {
    throw MalformedInput(std::to_string(remaining()) + " trailing bytes", offset());
  }
}

}  // namespace encsynth
