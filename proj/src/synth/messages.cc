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

#include "encsynth/synth/messages.h"

namespace encsynth::synth {
namespace {

void WriteCipher(ByteWriter& w, const Bytes& cipher) { w.Raw(cipher); }

Bytes ReadCipher(ByteReader& r) {
  ByteReader probe = r;
  he::ReadCipherHeader(probe);
  const auto raw = r.Raw(probe.offset() - r.offset());
  return {raw.begin(), raw.end()};
}

void WriteEntries(ByteWriter& w, const std::vector<CipherEntry>& entries) {
  w.U32(static_cast<std::uint32_t>(entries.size()));
  for (const CipherEntry& e : entries) {
    w.U32(e.id);
    WriteCipher(w, e.cipher);
  }
}

std::vector<CipherEntry> ReadEntries(ByteReader& r) {
  const std::size_t at = r.offset();
  const std::uint32_t n = r.U32();
  // Each entry takes at least 21 bytes; reject absurd counts before allocating.
  if (n > r.remaining() / 21) throw MalformedInput("entry count exceeds the frame", at);
  std::vector<CipherEntry> out(n);
  for (CipherEntry& e : out) {
    e.id = r.U32();
    e.cipher = ReadCipher(r);
  }
  return out;
}

void WriteProfile(ByteWriter& w, const he::HeProfile& p) {
  w.U32(static_cast<std::uint32_t>(p.ring_dimension));
  w.U32(static_cast<std::uint32_t>(p.chain_bits.size()));
  for (int b : p.chain_bits) w.U32(static_cast<std::uint32_t>(b));
  w.U32(static_cast<std::uint32_t>(p.log2_scale));
}

he::HeProfile ReadProfile(ByteReader& r) {
  he::HeProfile p;
  p.ring_dimension = static_cast<int>(r.U32());
  const std::size_t at = r.offset();
  const std::uint32_t n = r.U32();
  if (n > 64) throw MalformedInput("modulus chain too long", at);
  p.chain_bits.assign(n, 0);
  for (int& b : p.chain_bits) b = static_cast<int>(r.U32());
  p.log2_scale = static_cast<int>(r.U32());
  return p;
}

struct Writer {
  ByteWriter& w;

  void operator()(const SessionInit& m) {
    WriteProfile(w, m.profile);
    w.U8(static_cast<std::uint8_t>(m.backend));
    w.F64(m.noise.sigma);
    w.F64(m.noise.rescale_bound);
    w.U64(m.noise.seed);
    w.Blob(m.eval_key);
    w.U32(static_cast<std::uint32_t>(m.exp.degree));
    w.F64(m.exp.c_max);
    w.F64(m.exp.lambda);
    w.U32(static_cast<std::uint32_t>(m.exp.squarings));
    w.U8(static_cast<std::uint8_t>(m.exp.method));
    w.F64(m.kappa);
    w.U32(m.num_states);
    WriteEntries(w, m.table);
  }
  void operator()(const Transition& m) {
    w.U64(m.episode);
    w.U32(m.step);
    w.U32(m.x);
    w.U32(m.x_next);
    WriteCipher(w, m.enc_cost);
  }
  void operator()(const RefreshRequest& m) { WriteEntries(w, m.entries); }
  void operator()(const RefreshResponse& m) { WriteEntries(w, m.entries); }
  void operator()(const TableRequest&) {}
  void operator()(const FinalTable& m) {
    WriteEntries(w, m.table);
    const ServerMetrics& s = m.metrics;
    for (std::uint64_t v : {s.transitions, s.updates, s.refresh_rounds, s.refreshed_ciphertexts,
                            s.table_requests, s.bytes_in, s.bytes_out}) {
      w.U64(v);
    }
    w.U32(static_cast<std::uint32_t>(s.depth_log.size()));
    for (const auto& [level, count] : s.depth_log) {
      w.I32(level);
      w.U64(count);
    }
  }
  void operator()(const Ack&) {}
  void operator()(const ErrorReply& m) {
    w.U32(static_cast<std::uint32_t>(m.code));
    w.String(m.detail);
  }
  void operator()(const Resume& m) { w.U64(m.episode); }
};

SessionInit ReadSessionInit(ByteReader& r) {
  SessionInit m;
  m.profile = ReadProfile(r);
  std::size_t at = r.offset();
  const std::uint8_t backend = r.U8();
  if (backend > static_cast<std::uint8_t>(he::BackendKind::kRlwe)) {
    throw MalformedInput("unknown backend tag", at);
  }
  m.backend = static_cast<he::BackendKind>(backend);
  m.noise.sigma = r.F64();
  m.noise.rescale_bound = r.F64();
  m.noise.seed = r.U64();
  const auto key = r.Blob();
  m.eval_key.assign(key.begin(), key.end());
  m.exp.degree = static_cast<int>(r.U32());
  m.exp.c_max = r.F64();
  m.exp.lambda = r.F64();
  m.exp.squarings = static_cast<int>(r.U32());
  at = r.offset();
  const std::uint8_t method = r.U8();
  if (method > 1) throw MalformedInput("unknown exp approximation method", at);
  m.exp.method = static_cast<he::ExpMethod>(method);
  m.kappa = r.F64();
  m.num_states = r.U32();
  m.table = ReadEntries(r);
  return m;
}

FinalTable ReadFinalTable(ByteReader& r) {
  FinalTable m;
  m.table = ReadEntries(r);
  ServerMetrics& s = m.metrics;
  for (std::uint64_t* v : {&s.transitions, &s.updates, &s.refresh_rounds,
                           &s.refreshed_ciphertexts, &s.table_requests, &s.bytes_in,
                           &s.bytes_out}) {
    *v = r.U64();
  }
  const std::size_t at = r.offset();
  const std::uint32_t n = r.U32();
  if (n > r.remaining() / 12) throw MalformedInput("depth log count exceeds the frame", at);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::int32_t level = r.I32();
    s.depth_log[level] = r.U64();
  }
  return m;
}

}  // namespace

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformed: return "malformed";
    case ErrorCode::kNoSession: return "no_session";
    case ErrorCode::kUnknownState: return "unknown_state";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kSequence: return "sequence";
    case ErrorCode::kLevel: return "level";
  }
  return "unknown";
}

MessageTag TagOf(const MessageBody& body) {
  return static_cast<MessageTag>(body.index() + 1);
}

const char* TagName(MessageTag tag) {
  switch (tag) {
    case MessageTag::kSessionInit: return "SessionInit";
    case MessageTag::kTransition: return "Transition";
    case MessageTag::kRefreshRequest: return "RefreshRequest";
    case MessageTag::kRefreshResponse: return "RefreshResponse";
    case MessageTag::kTableRequest: return "TableRequest";
    case MessageTag::kFinalTable: return "FinalTable";
    case MessageTag::kAck: return "Ack";
    case MessageTag::kError: return "Error";
    case MessageTag::kResume: return "Resume";
  }
  return "unknown";
}

Bytes SerializeMessage(const Message& m) {
  Bytes out;
  ByteWriter w(out);
  w.U8(static_cast<std::uint8_t>(TagOf(m.body)));
  w.U64(m.session);
  w.U64(m.seq);
  std::visit(Writer{w}, m.body);
  return out;
}

Message DeserializeMessage(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  Message m;
  const std::uint8_t tag = r.U8();
  m.session = r.U64();
  m.seq = r.U64();
  switch (static_cast<MessageTag>(tag)) {
    case MessageTag::kSessionInit: m.body = ReadSessionInit(r); break;
    case MessageTag::kTransition: {
      Transition t;
      t.episode = r.U64();
      t.step = r.U32();
      t.x = r.U32();
      t.x_next = r.U32();
      t.enc_cost = ReadCipher(r);
      m.body = std::move(t);
      break;
    }
    case MessageTag::kRefreshRequest: m.body = RefreshRequest{ReadEntries(r)}; break;
    case MessageTag::kRefreshResponse: m.body = RefreshResponse{ReadEntries(r)}; break;
    case MessageTag::kTableRequest: m.body = TableRequest{}; break;
    case MessageTag::kFinalTable: m.body = ReadFinalTable(r); break;
    case MessageTag::kAck: m.body = Ack{}; break;
    case MessageTag::kError: {
      ErrorReply e;
      const std::size_t at = r.offset();
      const std::uint32_t code = r.U32();
      if (code < 1 || code > 7) throw MalformedInput("unknown error code", at);
      e.code = static_cast<ErrorCode>(code);
      e.detail = r.String();
      m.body = std::move(e);
      break;
    }
    case MessageTag::kResume: m.body = Resume{r.U64()}; break;
    default: throw MalformedInput("unknown message tag " + std::to_string(tag), 0);
  }
  r.ExpectEnd();
  return m;
}

}  // namespace encsynth::synth
