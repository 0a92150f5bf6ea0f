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

#include "encsynth/he/slot_backends.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "encsynth/common/rng.h"

namespace encsynth::he {
namespace {

enum OpCode : std::uint64_t {
  kOpAdd = 1,
  kOpAddPlain,
  kOpMul,
  kOpMulPlain,
  kOpRescale,
};

std::uint64_t HashCipher(std::uint64_t h, const CipherValue& c) {
  h = Mix64(h ^ static_cast<std::uint64_t>(c.level));
  h = Mix64(h ^ std::bit_cast<std::uint64_t>(c.log2_scale));
  for (double v : SlotsOf(c)) h = Mix64(h ^ std::bit_cast<std::uint64_t>(v));
  return h;
}

std::uint64_t HashDouble(std::uint64_t h, double v) {
  return Mix64(h ^ std::bit_cast<std::uint64_t>(v));
}

void CheckSlots(const CipherValue& a, const CipherValue& b, const char* op) {
  if (SlotsOf(a).size() != SlotsOf(b).size()) {
    throw CipherMismatch(std::string(op) + ": slot count mismatch");
  }
}

std::shared_ptr<const CipherPayload> Slots(std::vector<double> v) {
  return std::make_shared<SlotPayload>(std::move(v));
}

}  // namespace

double HashedUniform(std::uint64_t key) {
  return static_cast<double>(Mix64(key) >> 11) * 0x1p-52 - 1.0;
}

double HashedGaussian(std::uint64_t key) {
  const double u1 = static_cast<double>((Mix64(key) >> 11) + 1) * 0x1p-53;
  const double u2 = static_cast<double>(Mix64(key ^ 0x9e3779b97f4a7c15ull) >> 11) * 0x1p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void SlotPayload::Serialize(Bytes& out) const {
  ByteWriter w(out);
  w.U32(static_cast<std::uint32_t>(slots_.size()));
  for (double v : slots_) w.F64(v);
}

std::vector<double> SlotPayload::Parse(std::span<const std::uint8_t> bytes, std::size_t base) {
  ByteReader r(bytes, base);
  const std::uint32_t n = r.U32();
  if (std::size_t(n) * 8 != r.remaining()) {
    throw MalformedInput("slot payload length does not match its count", r.offset());
  }
  std::vector<double> out(n);
  for (double& v : out) v = r.F64();
  return out;
}

const std::vector<double>& SlotsOf(const CipherValue& c) {
  const auto* p = dynamic_cast<const SlotPayload*>(c.payload.get());
  if (p == nullptr) throw CipherMismatch("ciphertext does not carry a slot payload");
  return p->slots();
}

// ---------------------------------------------------------------------------
// ExactEvaluator

ExactEvaluator::ExactEvaluator(HeProfile profile) : profile_(std::move(profile)) {
  profile_.Validate();
}

CipherValue ExactEvaluator::Make(std::vector<double> slots) const {
  return {BackendKind::kExact, static_cast<double>(profile_.log2_scale), kUnboundedLevel,
          Slots(std::move(slots))};
}

CipherValue ExactEvaluator::Add(const CipherValue& a, const CipherValue& b) const {
  CheckBackend(kind(), a, "Add");
  CheckBackend(kind(), b, "Add");
  CheckSameLevelAndScale(a, b, "Add");
  CheckSlots(a, b, "Add");
  std::vector<double> out = SlotsOf(a);
  const auto& bs = SlotsOf(b);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] + bs[i];
  return Make(std::move(out));
}

CipherValue ExactEvaluator::AddPlain(const CipherValue& a, double p) const {
  CheckBackend(kind(), a, "AddPlain");
  std::vector<double> out = SlotsOf(a);
  for (double& v : out) v = v + p;
  return Make(std::move(out));
}

CipherValue ExactEvaluator::Mul(const CipherValue& a, const CipherValue& b) const {
  CheckBackend(kind(), a, "Mul");
  CheckBackend(kind(), b, "Mul");
  CheckSlots(a, b, "Mul");
  std::vector<double> out = SlotsOf(a);
  const auto& bs = SlotsOf(b);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] * bs[i];
  return Make(std::move(out));
}

CipherValue ExactEvaluator::MulPlain(const CipherValue& a, double p) const {
  CheckBackend(kind(), a, "MulPlain");
  std::vector<double> out = SlotsOf(a);
  for (double& v : out) v = v * p;
  return Make(std::move(out));
}

CipherValue ExactEvaluator::Rescale(const CipherValue& a) const {
  CheckBackend(kind(), a, "Rescale");
  return a;
}

CipherValue ExactEvaluator::AlignLevels(const CipherValue& a, int target_level) const {
  CheckBackend(kind(), a, "AlignLevels");
  if (target_level < 0) throw PreconditionError("AlignLevels: negative target level");
  return a;
}

CipherValue ExactEvaluator::ConstantLike(double value, const CipherValue& like) const {
  CheckBackend(kind(), like, "ConstantLike");
  return Make(std::vector<double>(SlotsOf(like).size(), value));
}

CipherValue ExactEvaluator::Deserialize(std::span<const std::uint8_t> bytes) const {
  ByteReader r(bytes);
  const CipherHeader h = ReadCipherHeader(r);
  r.ExpectEnd();
  if (h.backend != kind()) throw MalformedInput("ciphertext is not from the exact backend", 0);
  CipherValue c = Make(SlotPayload::Parse(h.payload, h.payload_offset));
  c.log2_scale = h.log2_scale;
  c.level = h.level;
  return c;
}

// ---------------------------------------------------------------------------
// EmulatorEvaluator

EmulatorEvaluator::EmulatorEvaluator(HeProfile profile, NoiseModel noise)
    : profile_(std::move(profile)), noise_(noise) {
  profile_.Validate();
  if (!(noise_.sigma >= 0.0) || !(noise_.rescale_bound >= 0.0)) {
    throw InvalidArgument("NoiseModel: sigma and rescale_bound must be >= 0");
  }
}

CipherValue EmulatorEvaluator::Make(std::vector<double> slots, int level,
                                    double log2_scale) const {
  return {BackendKind::kEmulator, log2_scale, level, Slots(std::move(slots))};
}

void EmulatorEvaluator::Perturb(std::vector<double>& slots, std::uint64_t op_key) const {
  if (noise_.sigma == 0.0) return;
  const std::uint64_t key = Mix64(noise_.seed ^ Mix64(op_key));
  for (std::size_t i = 0; i < slots.size(); ++i) {
    slots[i] += noise_.sigma * HashedGaussian(key + i);
  }
}

CipherValue EmulatorEvaluator::Add(const CipherValue& a, const CipherValue& b) const {
  CheckBackend(kind(), a, "Add");
  CheckBackend(kind(), b, "Add");
  CheckSameLevelAndScale(a, b, "Add");
  CheckSlots(a, b, "Add");
  std::vector<double> out = SlotsOf(a);
  const auto& bs = SlotsOf(b);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] + bs[i];
  if (noise_.sigma != 0.0) Perturb(out, HashCipher(HashCipher(kOpAdd, a), b));
  return Make(std::move(out), a.level, a.log2_scale);
}

CipherValue EmulatorEvaluator::AddPlain(const CipherValue& a, double p) const {
  CheckBackend(kind(), a, "AddPlain");
  std::vector<double> out = SlotsOf(a);
  for (double& v : out) v = v + p;
  if (noise_.sigma != 0.0) Perturb(out, HashDouble(HashCipher(kOpAddPlain, a), p));
  return Make(std::move(out), a.level, a.log2_scale);
}

CipherValue EmulatorEvaluator::Mul(const CipherValue& a, const CipherValue& b) const {
  CheckBackend(kind(), a, "Mul");
  CheckBackend(kind(), b, "Mul");
  if (a.level != b.level) {
    throw CipherMismatch("Mul: level mismatch " + std::to_string(a.level) + " vs " +
                         std::to_string(b.level) + "; align levels first");
  }
  if (a.level < 1) throw LevelExhausted("Mul", a.level);
  CheckSlots(a, b, "Mul");
  std::vector<double> out = SlotsOf(a);
  const auto& bs = SlotsOf(b);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] * bs[i];
  if (noise_.sigma != 0.0) Perturb(out, HashCipher(HashCipher(kOpMul, a), b));
  return Make(std::move(out), a.level, a.log2_scale + b.log2_scale);
}

CipherValue EmulatorEvaluator::MulPlain(const CipherValue& a, double p) const {
  CheckBackend(kind(), a, "MulPlain");
  if (a.level < 1) throw LevelExhausted("MulPlain", a.level);
  std::vector<double> out = SlotsOf(a);
  for (double& v : out) v = v * p;
  if (noise_.sigma != 0.0) Perturb(out, HashDouble(HashCipher(kOpMulPlain, a), p));
  return Make(std::move(out), a.level, a.log2_scale + profile_.log2_scale);
}

CipherValue EmulatorEvaluator::Rescale(const CipherValue& a) const {
  CheckBackend(kind(), a, "Rescale");
  if (a.level < 1) throw LevelExhausted("Rescale", a.level);
  const double excess = a.log2_scale - 2.0 * profile_.log2_scale;
  if (std::abs(std::exp2(excess) - 1.0) > 0x1p-20) {
    throw PreconditionError("Rescale: scale 2^" + std::to_string(a.log2_scale) +
                            " is not the square of the base scale");
  }
  std::vector<double> out = SlotsOf(a);
  if (noise_.rescale_bound != 0.0) {
    const std::uint64_t key = Mix64(noise_.seed ^ Mix64(HashCipher(kOpRescale, a)));
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += noise_.rescale_bound * HashedUniform(key + i);
    }
  }
  return Make(std::move(out), a.level - 1, a.log2_scale - profile_.log2_scale);
}

CipherValue EmulatorEvaluator::AlignLevels(const CipherValue& a, int target_level) const {
  CheckBackend(kind(), a, "AlignLevels");
  if (target_level < 0 || target_level > a.level) {
    throw PreconditionError("AlignLevels: cannot move from level " + std::to_string(a.level) +
                            " to " + std::to_string(target_level));
  }
  if (a.log2_scale != profile_.log2_scale) {
    throw PreconditionError("AlignLevels: ciphertext must be rescaled first");
  }
  if (target_level == a.level) return a;
  return Make(SlotsOf(a), target_level, a.log2_scale);
}

CipherValue EmulatorEvaluator::ConstantLike(double value, const CipherValue& like) const {
  CheckBackend(kind(), like, "ConstantLike");
  return Make(std::vector<double>(SlotsOf(like).size(), value), like.level, like.log2_scale);
}

CipherValue EmulatorEvaluator::Deserialize(std::span<const std::uint8_t> bytes) const {
  ByteReader r(bytes);
  const CipherHeader h = ReadCipherHeader(r);
  r.ExpectEnd();
  if (h.backend != kind()) throw MalformedInput("ciphertext is not from the emulator backend", 0);
  if (h.level > fresh_level()) {
    throw MalformedInput("ciphertext level above the profile's budget", 9);
  }
  return Make(SlotPayload::Parse(h.payload, h.payload_offset), h.level, h.log2_scale);
}

}  // namespace encsynth::he
