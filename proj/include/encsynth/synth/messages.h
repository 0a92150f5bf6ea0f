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

#ifndef ENCSYNTH_SYNTH_MESSAGES_H_
#define ENCSYNTH_SYNTH_MESSAGES_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "encsynth/common/bytes.h"
#include "encsynth/he/cipher.h"
#include "encsynth/he/exp_approx.h"
#include "encsynth/he/profile.h"
#include "encsynth/he/slot_backends.h"

namespace encsynth::synth {

// Successor id meaning "entered an absorbing state" (Z = 1 in the clear).
inline constexpr std::uint32_t kAbsorbingMarker = 0xFFFFFFFF;
// Refresh entry id of the pending update's cost factor.
inline constexpr std::uint32_t kFactorEntry = 0xFFFFFFFE;

// Ciphertexts travel in their framed he_arith form and stay opaque to the
// codec; only their framing is checked here.
struct CipherEntry {
  std::uint32_t id = 0;
  Bytes cipher;
  bool operator==(const CipherEntry&) const = default;
};

struct SessionInit {
  he::HeProfile profile;
  he::BackendKind backend = he::BackendKind::kExact;
  he::NoiseModel noise;  // evaluation noise of the emulator backend
  Bytes eval_key;        // RLWE relinearization key; empty otherwise
  he::ExpApproxConfig exp;
  double kappa = 1000.0;
  std::uint32_t num_states = 0;
  // One entry per non-absorbing state.
  std::vector<CipherEntry> table;
  bool operator==(const SessionInit&) const = default;
};

struct Transition {
  std::uint64_t episode = 0;
  std::uint32_t step = 0;
  std::uint32_t x = 0;
  std::uint32_t x_next = 0;  // or kAbsorbingMarker
  Bytes enc_cost;
  bool operator==(const Transition&) const = default;
};

struct RefreshRequest {
  std::vector<CipherEntry> entries;
  bool operator==(const RefreshRequest&) const = default;
};

struct RefreshResponse {
  std::vector<CipherEntry> entries;
  bool operator==(const RefreshResponse&) const = default;
};

struct TableRequest {
  bool operator==(const TableRequest&) const = default;
};

struct ServerMetrics {
  std::uint64_t transitions = 0;
  std::uint64_t updates = 0;
  std::uint64_t refresh_rounds = 0;
  std::uint64_t refreshed_ciphertexts = 0;
  std::uint64_t table_requests = 0;
  std::uint64_t bytes_in = 0;
  std::uint64_t bytes_out = 0;
  // Level of each freshly updated entry -> count.
  std::map<std::int32_t, std::uint64_t> depth_log;
  bool operator==(const ServerMetrics&) const = default;
};

struct FinalTable {
  std::vector<CipherEntry> table;
  ServerMetrics metrics;
  bool operator==(const FinalTable&) const = default;
};

// Server acknowledgement of a Transition or RefreshResponse whose update has
// been applied, or of a Resume.
struct Ack {
  bool operator==(const Ack&) const = default;
};

enum class ErrorCode : std::uint32_t {
  kMalformed = 1,
  kNoSession = 2,
  kUnknownState = 3,
  kProtocol = 4,
  kConfig = 5,
  kSequence = 6,
  kLevel = 7,
};
const char* ErrorCodeName(ErrorCode code);

struct ErrorReply {
  ErrorCode code = ErrorCode::kProtocol;
  std::string detail;
  bool operator==(const ErrorReply&) const = default;
};

// Rolls the server back to the start of `episode` after a transport loss.
struct Resume {
  std::uint64_t episode = 0;
  bool operator==(const Resume&) const = default;
};

enum class MessageTag : std::uint8_t {
  kSessionInit = 1,
  kTransition = 2,
  kRefreshRequest = 3,
  kRefreshResponse = 4,
  kTableRequest = 5,
  kFinalTable = 6,
  kAck = 7,
  kError = 8,
  kResume = 9,
};

using MessageBody = std::variant<SessionInit, Transition, RefreshRequest, RefreshResponse,
                                 TableRequest, FinalTable, Ack, ErrorReply, Resume>;

struct Message {
  std::uint64_t session = 0;
  std::uint64_t seq = 0;
  MessageBody body;
  bool operator==(const Message&) const = default;
};

MessageTag TagOf(const MessageBody& body);
const char* TagName(MessageTag tag);

// Body layout: u8 tag, u64 session id, u64 sequence number, then the variant
// fields in declaration order. Integers little-endian, doubles as IEEE-754
// bit patterns, vectors and byte strings u32-length-prefixed, ciphertexts in
// their framed form.
Bytes SerializeMessage(const Message& m);
// Throws MalformedInput (with the failing offset) on truncation, trailing
// bytes, unknown tags or malformed ciphertext framing.
Message DeserializeMessage(std::span<const std::uint8_t> bytes);

}  // namespace encsynth::synth

#endif  // ENCSYNTH_SYNTH_MESSAGES_H_
