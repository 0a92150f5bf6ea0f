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

#include "encsynth/synth/client.h"

#include <algorithm>
#include <chrono>

#include "encsynth/he/slot_key_holders.h"
#include "encsynth/re_rl/z_learning.h"
#include "encsynth/rlwe/evaluator.h"
#include "encsynth/rlwe/key_holder.h"

namespace encsynth::synth {
namespace {

using mdp::ActionId;
using mdp::StateId;

double MaxStepCost(const mdp::TabularMdp& mdp) {
  double c = 0.0;
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    if (mdp.IsAbsorbing(x)) continue;
    for (ActionId u : mdp.ValidActions(x)) c = std::max(c, mdp.Cost(x, u));
  }
  return c;
}

}  // namespace

std::unique_ptr<he::KeyHolder> MakeKeyHolder(const SessionConfig& config) {
  switch (config.backend) {
    case he::BackendKind::kExact:
      return std::make_unique<he::ExactKeyHolder>(config.profile);
    case he::BackendKind::kEmulator:
      return std::make_unique<he::EmulatorKeyHolder>(config.profile, config.noise);
    case he::BackendKind::kRlwe:
      return std::make_unique<rlwe::RlweKeyHolder>(config.profile, config.key_seed);
  }
  throw InvalidArgument("unknown backend");
}

SynthClient::SynthClient(const re::ReProblem& problem, SessionConfig config)
    : problem_(problem), config_(std::move(config)) {
  if (config_.episodes < 0 || config_.max_steps <= 0) {
    throw InvalidArgument("SynthClient: episodes must be >= 0 and max_steps > 0");
  }
  exp_ = config_.exp ? *config_.exp
                     : he::DefaultExpApproxConfig(MaxStepCost(problem.mdp()), problem.lambda());
  keys_ = MakeKeyHolder(config_);
}

Message SynthClient::Exchange(Transport& link, MessageBody body) {
  const Bytes request = SerializeMessage({state_.session, state_.next_seq++, std::move(body)});
  Bytes reply;
  try {
    link.Send(request);
    state_.metrics.bytes_sent += request.size();
    reply = link.Receive();
  } catch (const TransportError& e) {
    throw SessionAborted(std::string("transport lost: ") + e.what(), state_);
  }
  state_.metrics.bytes_received += reply.size();
  Message m = DeserializeMessage(reply);
  if (const auto* err = std::get_if<ErrorReply>(&m.body)) {
    throw ServerRejected(err->code, err->detail);
  }
  return m;
}

re::DesirabilityTable SynthClient::DecryptTable(const std::vector<CipherEntry>& entries) {
  const mdp::TabularMdp& mdp = problem_.mdp();
  std::vector<double> z(mdp.num_states(), 1.0);
  for (const CipherEntry& e : entries) {
    if (e.id >= z.size()) throw ServerRejected(ErrorCode::kUnknownState, "table entry out of range");
    double v = keys_->DecryptScalar(keys_->evaluator().Deserialize(e.cipher));
    if (!(v > 0.0)) {
      v = kDesirabilityFloor;
      ++state_.metrics.clamped_entries;
    }
    z[e.id] = v;
  }
  return re::DesirabilityTable(mdp, std::move(z));
}

FinalTable SynthClient::FetchTable(Transport& link) {
  Message m = Exchange(link, TableRequest{});
  auto* table = std::get_if<FinalTable>(&m.body);
  if (table == nullptr) throw ServerRejected(ErrorCode::kProtocol, "expected FinalTable");
  ++state_.metrics.table_requests;
  return std::move(*table);
}

void SynthClient::RunEpisode(Transport& link, int k) {
  const mdp::TabularMdp& mdp = problem_.mdp();
  const mdp::Episode episode = re::SampleTrainingEpisode(problem_, k, config_.max_steps, config_.seed);
  for (std::size_t t = 0; t < episode.steps.size(); ++t) {
    const mdp::Step& s = episode.steps[t];
    const StateId next = episode.NextState(t);
    Transition tr;
    tr.episode = static_cast<std::uint64_t>(k);
    tr.step = static_cast<std::uint32_t>(t);
    tr.x = static_cast<std::uint32_t>(s.state);
    tr.x_next = mdp.IsAbsorbing(next) ? kAbsorbingMarker : static_cast<std::uint32_t>(next);
    tr.enc_cost = he::SerializeCipher(keys_->EncryptScalar(s.cost));
    Message reply = Exchange(link, std::move(tr));
    ++state_.metrics.transitions;
    while (auto* req = std::get_if<RefreshRequest>(&reply.body)) {
      RefreshResponse resp;
      for (const CipherEntry& e : req->entries) {
        const he::CipherValue c = keys_->evaluator().Deserialize(e.cipher);
        resp.entries.push_back({e.id, he::SerializeCipher(keys_->Refresh(c))});
      }
      ++state_.metrics.refresh_rounds;
      state_.metrics.refreshed_ciphertexts += resp.entries.size();
      reply = Exchange(link, std::move(resp));
    }
    if (!std::holds_alternative<Ack>(reply.body)) {
      throw ServerRejected(ErrorCode::kProtocol, "expected Ack or RefreshRequest");
    }
  }
}

SessionResult SynthClient::Run(Transport& link, const TableCallback& on_table) {
  state_ = ClientCheckpoint{};
  const auto start = std::chrono::steady_clock::now();
  SessionInit init;
  init.profile = config_.profile;
  init.backend = config_.backend;
  init.noise = config_.noise;
  if (config_.backend == he::BackendKind::kRlwe) {
    const auto& holder = static_cast<const rlwe::RlweKeyHolder&>(*keys_);
    init.eval_key = rlwe::SerializeEvalKey(holder.context(), *holder.eval_key());
  }
  init.exp = exp_;
  init.kappa = config_.kappa;
  const mdp::TabularMdp& mdp = problem_.mdp();
  init.num_states = static_cast<std::uint32_t>(mdp.num_states());
  for (StateId x : mdp.NonAbsorbingStates()) {
    init.table.push_back({static_cast<std::uint32_t>(x), he::SerializeCipher(keys_->EncryptScalar(1.0))});
  }
  const Message reply = Exchange(link, std::move(init));
  if (!std::holds_alternative<Ack>(reply.body)) {
    throw ServerRejected(ErrorCode::kProtocol, "expected Ack to SessionInit");
  }
  state_.session = reply.session;
  SessionResult result = Continue(link, on_table);
  result.client.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SessionResult SynthClient::Resume(Transport& link, const ClientCheckpoint& checkpoint,
                                  const TableCallback& on_table) {
  state_ = checkpoint;
  const auto start = std::chrono::steady_clock::now();
  const Message reply =
      Exchange(link, synth::Resume{static_cast<std::uint64_t>(checkpoint.next_episode)});
  if (!std::holds_alternative<Ack>(reply.body)) {
    throw ServerRejected(ErrorCode::kProtocol, "expected Ack to Resume");
  }
  SessionResult result = Continue(link, on_table);
  result.client.wall_seconds +=
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SessionResult SynthClient::Continue(Transport& link, const TableCallback& on_table) {
  std::vector<bool> wanted(config_.episodes + 1, false);
  for (int c : config_.checkpoints) {
    if (c >= 1 && c <= config_.episodes) wanted[c] = true;
  }
  for (int k = state_.next_episode; k <= config_.episodes; ++k) {
    RunEpisode(link, k);
    const bool periodic = config_.table_every > 0 && k % config_.table_every == 0;
    if (wanted[k] || periodic) {
      const re::DesirabilityTable z = DecryptTable(FetchTable(link).table);
      if (wanted[k]) state_.snapshots.insert_or_assign(k, z);
      if (on_table) on_table(k, z);
    }
    state_.next_episode = k + 1;
  }
  FinalTable final_table = FetchTable(link);
  SessionResult result{DecryptTable(final_table.table), state_.snapshots,
                       std::move(final_table.metrics), state_.metrics};
  return result;
}

}  // namespace encsynth::synth
