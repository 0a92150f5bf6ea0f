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

#ifndef ENCSYNTH_SYNTH_SERVER_H_
#define ENCSYNTH_SYNTH_SERVER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "encsynth/common/bytes.h"
#include "encsynth/he/cipher.h"
#include "encsynth/he/evaluator.h"
#include "encsynth/he/exp_approx.h"
#include "encsynth/synth/messages.h"
#include "encsynth/synth/transport.h"

namespace encsynth::synth {

// Builds the evaluator a SessionInit describes. Throws InvalidArgument on an
// inconsistent description (e.g. an RLWE session without an evaluation key).
std::unique_ptr<he::Evaluator> MakeServerEvaluator(const SessionInit& init);

// Untrusted side of the protocol. Holds the encrypted Z table and evaluation
// keys only, so it can combine ciphertexts but never read them.
//
// Each Transition is answered with Ack once its update is applied, or with a
// RefreshRequest listing the operands whose level is too low; the matching
// RefreshResponse completes the update. Violations come back as Error replies
// and leave the session unchanged.
class SynthServer {
 public:
  SynthServer() = default;

  // Decodes one request and returns the encoded reply. Never throws on
  // malformed or out-of-protocol input.
  Bytes Handle(std::span<const std::uint8_t> request);
  Handler AsHandler() {
    return [this](std::span<const std::uint8_t> r) { return Handle(r); };
  }

  std::size_t session_count() const { return sessions_.size(); }
  // Metrics of a live session; nullptr if unknown.
  const ServerMetrics* metrics(std::uint64_t session) const;

 private:
  struct Pending {
    std::uint32_t x;
    std::uint32_t x_next;
    double alpha;
    he::CipherValue factor;
    std::vector<std::uint32_t> requested;
  };

  struct Snapshot {
    std::uint64_t episode = 0;
    std::vector<std::optional<he::CipherValue>> table;
    std::vector<std::uint64_t> visits;
  };

  struct Session {
    std::unique_ptr<he::Evaluator> ev;
    std::unique_ptr<he::ExpApprox> exp;
    double kappa = 0.0;
    // nullopt marks an absorbing state.
    std::vector<std::optional<he::CipherValue>> table;
    std::vector<std::uint64_t> visits;
    std::optional<Pending> pending;
    std::optional<std::uint64_t> episode;
    Snapshot snapshot;
    std::uint64_t last_client_seq = 0;
    std::uint64_t next_reply_seq = 1;
    ServerMetrics metrics;
  };

  MessageBody Dispatch(std::uint64_t& session_id, std::uint64_t seq, MessageBody&& body);
  MessageBody OnInit(std::uint64_t& session_id, SessionInit& init);
  MessageBody OnTransition(Session& s, const Transition& t);
  MessageBody OnRefresh(Session& s, const RefreshResponse& r);
  MessageBody OnTable(Session& s);
  MessageBody OnResume(Session& s, const Resume& r);
  // Applies the pending update or asks for the operands it is short of.
  MessageBody Advance(Session& s);

  std::map<std::uint64_t, Session> sessions_;
  std::uint64_t next_session_ = 1;
};

}  // namespace encsynth::synth

#endif  // ENCSYNTH_SYNTH_SERVER_H_
