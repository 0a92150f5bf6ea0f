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

#include "encsynth/synth/server.h"

#include <algorithm>
#include <set>

#include "encsynth/he/slot_backends.h"
#include "encsynth/he/z_update.h"
#include "encsynth/rlwe/evaluator.h"
#include "encsynth/rlwe/params.h"

namespace encsynth::synth {
namespace {

// Error reply carried as an exception inside the handlers.
struct Reject {
  ErrorCode code;
  std::string detail;
};

ErrorReply ToReply(const Reject& r) { return {r.code, r.detail}; }

std::vector<CipherEntry> Entries(const std::vector<std::pair<std::uint32_t, const he::CipherValue*>>& in) {
  std::vector<CipherEntry> out;
  out.reserve(in.size());
  for (const auto& [id, c] : in) out.push_back({id, he::SerializeCipher(*c)});
  return out;
}

he::CipherValue ParseCipher(const he::Evaluator& ev, const Bytes& bytes, const char* what) {
  try {
    return ev.Deserialize(bytes);
  } catch (const MalformedInput& e) {
    throw Reject{ErrorCode::kMalformed, std::string(what) + ": " + e.what()};
  } catch (const InvalidArgument& e) {
    throw Reject{ErrorCode::kMalformed, std::string(what) + ": " + e.what()};
  }
}

}  // namespace

std::unique_ptr<he::Evaluator> MakeServerEvaluator(const SessionInit& init) {
  init.profile.Validate();
  switch (init.backend) {
    case he::BackendKind::kExact:
      return std::make_unique<he::ExactEvaluator>(init.profile);
    case he::BackendKind::kEmulator:
      return std::make_unique<he::EmulatorEvaluator>(init.profile, init.noise);
    case he::BackendKind::kRlwe: {
      if (init.eval_key.empty()) throw InvalidArgument("RLWE session without an evaluation key");
      auto ctx = rlwe::MakeContext(init.profile);
      auto key = std::make_shared<const rlwe::RlweEvalKey>(
          rlwe::DeserializeEvalKey(*ctx, init.eval_key));
      return std::make_unique<rlwe::RlweEvaluator>(std::move(ctx), std::move(key));
    }
  }
  throw InvalidArgument("unknown backend");
}

const ServerMetrics* SynthServer::metrics(std::uint64_t session) const {
  const auto it = sessions_.find(session);
  return it == sessions_.end() ? nullptr : &it->second.metrics;
}

Bytes SynthServer::Handle(std::span<const std::uint8_t> request) {
  Message reply;
  Session* session = nullptr;
  try {
    Message m = DeserializeMessage(request);
    reply.session = m.session;
    reply.body = Dispatch(reply.session, m.seq, std::move(m.body));
  } catch (const MalformedInput& e) {
    reply.body = ErrorReply{ErrorCode::kMalformed, e.what()};
  } catch (const Reject& r) {
    reply.body = ToReply(r);
  }
  if (const auto it = sessions_.find(reply.session); it != sessions_.end()) {
    session = &it->second;
    reply.seq = session->next_reply_seq++;
  }
  Bytes out = SerializeMessage(reply);
  if (session != nullptr) {
    session->metrics.bytes_in += request.size();
    session->metrics.bytes_out += out.size();
  }
  return out;
}

MessageBody SynthServer::Dispatch(std::uint64_t& session_id, std::uint64_t seq,
                                  MessageBody&& body) {
  if (auto* init = std::get_if<SessionInit>(&body)) {
    MessageBody reply = OnInit(session_id, *init);
    sessions_.at(session_id).last_client_seq = seq;
    return reply;
  }
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw Reject{ErrorCode::kNoSession, "unknown session " + std::to_string(session_id)};
  }
  Session& s = it->second;
  if (seq <= s.last_client_seq) {
    throw Reject{ErrorCode::kSequence, "sequence number " + std::to_string(seq) +
                                           " does not exceed " + std::to_string(s.last_client_seq)};
  }
  MessageBody reply;
  if (const auto* t = std::get_if<Transition>(&body)) {
    reply = OnTransition(s, *t);
  } else if (const auto* r = std::get_if<RefreshResponse>(&body)) {
    reply = OnRefresh(s, *r);
  } else if (std::holds_alternative<TableRequest>(body)) {
    reply = OnTable(s);
  } else if (const auto* r = std::get_if<Resume>(&body)) {
    reply = OnResume(s, *r);
  } else {
    throw Reject{ErrorCode::kProtocol,
                 std::string("clients may not send ") + TagName(TagOf(body))};
  }
  s.last_client_seq = seq;
  return reply;
}

MessageBody SynthServer::OnInit(std::uint64_t& session_id, SessionInit& init) {
  Session s;
  try {
    s.ev = MakeServerEvaluator(init);
    s.exp = std::make_unique<he::ExpApprox>(init.exp);
  } catch (const Error& e) {
    throw Reject{ErrorCode::kConfig, e.what()};
  }
  const int fresh = s.ev->fresh_level();
  const int exp_depth = he::ExpDepth(init.exp);
  if (exp_depth > fresh) {
    throw Reject{ErrorCode::kConfig, "exp approximation needs depth " + std::to_string(exp_depth) +
                                         " but fresh ciphertexts hold " + std::to_string(fresh) +
                                         " levels"};
  }
  const he::ZUpdateNeeds needs = he::ZUpdateRequirements(he::Successor::kCipher);
  if (fresh < std::max({needs.factor, needs.z_x, needs.z_next})) {
    throw Reject{ErrorCode::kConfig, "profile has too few levels for one Z update"};
  }
  if (!(init.kappa > 0.0)) throw Reject{ErrorCode::kConfig, "kappa must be positive"};
  if (init.num_states == 0) throw Reject{ErrorCode::kConfig, "num_states must be positive"};
  s.kappa = init.kappa;
  s.table.resize(init.num_states);
  s.visits.assign(init.num_states, 0);
  for (const CipherEntry& e : init.table) {
    if (e.id >= init.num_states || s.table[e.id]) {
      throw Reject{ErrorCode::kUnknownState,
                   "initial table entry " + std::to_string(e.id) + " is out of range or repeated"};
    }
    s.table[e.id] = ParseCipher(*s.ev, e.cipher, "initial table entry");
  }
  session_id = next_session_++;
  sessions_.emplace(session_id, std::move(s));
  return Ack{};
}

MessageBody SynthServer::OnTransition(Session& s, const Transition& t) {
  if (s.pending) throw Reject{ErrorCode::kProtocol, "a refresh round is outstanding"};
  const auto known = [&](std::uint32_t id) { return id < s.table.size() && s.table[id]; };
  if (!known(t.x)) {
    throw Reject{ErrorCode::kUnknownState, "state " + std::to_string(t.x) + " has no table entry"};
  }
  if (t.x_next != kAbsorbingMarker && !known(t.x_next)) {
    throw Reject{ErrorCode::kUnknownState,
                 "successor " + std::to_string(t.x_next) + " has no table entry"};
  }
  const he::CipherValue cost = ParseCipher(*s.ev, t.enc_cost, "encrypted cost");
  if (cost.level < s.exp->depth()) {
    throw Reject{ErrorCode::kLevel, "encrypted cost at level " + std::to_string(cost.level) +
                                        " is below the exp depth " +
                                        std::to_string(s.exp->depth())};
  }
  he::CipherValue factor;
  try {
    factor = s.exp->Evaluate(*s.ev, cost);
  } catch (const he::LevelExhausted& e) {
    throw Reject{ErrorCode::kLevel, e.what()};
  }
  if (!s.episode || *s.episode != t.episode) {
    s.snapshot = {t.episode, s.table, s.visits};
    s.episode = t.episode;
  }
  ++s.metrics.transitions;
  const double alpha = s.kappa / (s.kappa + static_cast<double>(s.visits[t.x]));
  ++s.visits[t.x];
  s.pending = Pending{t.x, t.x_next, alpha, std::move(factor), {}};
  return Advance(s);
}

MessageBody SynthServer::Advance(Session& s) {
  Pending& p = *s.pending;
  const bool absorbing = p.x_next == kAbsorbingMarker;
  const he::ZUpdateNeeds needs =
      he::ZUpdateRequirements(absorbing ? he::Successor::kAbsorbing : he::Successor::kCipher);
  const he::CipherValue& z_x = *s.table[p.x];
  std::vector<std::pair<std::uint32_t, const he::CipherValue*>> short_of;
  if (p.factor.level < needs.factor) short_of.emplace_back(kFactorEntry, &p.factor);
  const int z_x_need = (!absorbing && p.x_next == p.x) ? std::max(needs.z_x, needs.z_next)
                                                        : needs.z_x;
  if (z_x.level < z_x_need) short_of.emplace_back(p.x, &*s.table[p.x]);
  if (!absorbing && p.x_next != p.x && s.table[p.x_next]->level < needs.z_next) {
    short_of.emplace_back(p.x_next, &*s.table[p.x_next]);
  }
  if (short_of.empty()) {
    const he::CipherValue* z_next = absorbing ? nullptr : &*s.table[p.x_next];
    try {
      he::CipherValue updated = he::EncryptedZUpdate(*s.ev, z_x, z_next, p.factor, p.alpha);
      ++s.metrics.depth_log[updated.level];
      ++s.metrics.updates;
      s.table[p.x] = std::move(updated);
      s.pending.reset();
      return Ack{};
    } catch (const he::LevelExhausted&) {
      // The preflight disagrees with the backend; refresh every non-fresh
      // operand so the retry starts from full levels.
      const int fresh = s.ev->fresh_level();
      if (p.factor.level < fresh) short_of.emplace_back(kFactorEntry, &p.factor);
      if (s.table[p.x]->level < fresh) short_of.emplace_back(p.x, &*s.table[p.x]);
      if (!absorbing && p.x_next != p.x && s.table[p.x_next]->level < fresh) {
        short_of.emplace_back(p.x_next, &*s.table[p.x_next]);
      }
      if (short_of.empty()) throw Reject{ErrorCode::kLevel, "update fails at fresh levels"};
    }
  }
  p.requested.clear();
  for (const auto& entry : short_of) p.requested.push_back(entry.first);
  ++s.metrics.refresh_rounds;
  s.metrics.refreshed_ciphertexts += short_of.size();
  return RefreshRequest{Entries(short_of)};
}

MessageBody SynthServer::OnRefresh(Session& s, const RefreshResponse& r) {
  if (!s.pending || s.pending->requested.empty()) {
    throw Reject{ErrorCode::kProtocol, "no refresh round is outstanding"};
  }
  Pending& p = *s.pending;
  std::set<std::uint32_t> want(p.requested.begin(), p.requested.end());
  std::set<std::uint32_t> got;
  for (const CipherEntry& e : r.entries) got.insert(e.id);
  if (got != want || r.entries.size() != want.size()) {
    throw Reject{ErrorCode::kProtocol, "refresh response does not match the request"};
  }
  std::vector<std::pair<std::uint32_t, he::CipherValue>> parsed;
  for (const CipherEntry& e : r.entries) {
    parsed.emplace_back(e.id, ParseCipher(*s.ev, e.cipher, "refreshed ciphertext"));
  }
  for (auto& [id, c] : parsed) {
    if (id == kFactorEntry) {
      p.factor = std::move(c);
    } else {
      s.table[id] = std::move(c);
    }
  }
  MessageBody next = Advance(s);
  if (std::holds_alternative<RefreshRequest>(next)) {
    // Refreshed operands are still short; undo the round's bookkeeping.
    --s.metrics.refresh_rounds;
    s.metrics.refreshed_ciphertexts -= std::get<RefreshRequest>(next).entries.size();
    throw Reject{ErrorCode::kLevel, "refreshed ciphertexts are below the required level"};
  }
  return next;
}

MessageBody SynthServer::OnTable(Session& s) {
  if (s.pending) throw Reject{ErrorCode::kProtocol, "a refresh round is outstanding"};
  ++s.metrics.table_requests;
  FinalTable out;
  for (std::uint32_t id = 0; id < s.table.size(); ++id) {
    if (s.table[id]) out.table.push_back({id, he::SerializeCipher(*s.table[id])});
  }
  out.metrics = s.metrics;
  return out;
}

MessageBody SynthServer::OnResume(Session& s, const Resume& r) {
  s.pending.reset();
  if (s.episode && *s.episode == r.episode) {
    s.table = s.snapshot.table;
    s.visits = s.snapshot.visits;
    s.episode.reset();
  } else if (s.episode && *s.episode > r.episode) {
    throw Reject{ErrorCode::kProtocol, "cannot roll back to episode " + std::to_string(r.episode)};
  }
  return Ack{};
}

}  // namespace encsynth::synth
