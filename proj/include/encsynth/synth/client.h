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

#ifndef ENCSYNTH_SYNTH_CLIENT_H_
#define ENCSYNTH_SYNTH_CLIENT_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "encsynth/he/exp_approx.h"
#include "encsynth/he/key_holder.h"
#include "encsynth/he/profile.h"
#include "encsynth/he/slot_backends.h"
#include "encsynth/re_rl/problem.h"
#include "encsynth/synth/messages.h"
#include "encsynth/synth/transport.h"

namespace encsynth::synth {

// Decrypted entries that come out non-positive (approximate decryption of a
// tiny Z) are replaced by this floor so ln Z stays finite.
inline constexpr double kDesirabilityFloor = 1e-12;

struct SessionConfig {
  he::BackendKind backend = he::BackendKind::kEmulator;
  he::HeProfile profile = he::HeProfile::Default();
  // Encryption and evaluation noise of the emulator backend.
  he::NoiseModel noise;
  // Defaults to DefaultExpApproxConfig(largest step cost, lambda).
  std::optional<he::ExpApproxConfig> exp;
  double kappa = 1000.0;
  int episodes = 5000;
  int max_steps = 200;
  std::uint64_t seed = 0;
  // Seeds the RLWE secret key.
  std::uint64_t key_seed = 1;
  // 1-based episodes after which the decrypted table is fetched.
  std::vector<int> checkpoints;
  // Also fetch every `table_every` episodes (0 disables).
  int table_every = 0;
};

struct ClientMetrics {
  std::uint64_t transitions = 0;
  std::uint64_t refresh_rounds = 0;
  std::uint64_t refreshed_ciphertexts = 0;
  std::uint64_t table_requests = 0;
  std::uint64_t bytes_sent = 0;
  std::uint64_t bytes_received = 0;
  std::uint64_t clamped_entries = 0;
  double wall_seconds = 0.0;
};

struct SessionResult {
  re::DesirabilityTable z;
  std::map<int, re::DesirabilityTable> snapshots;
  ServerMetrics server;
  ClientMetrics client;
};

// Where an interrupted session stands. Episodes before `next_episode` are
// fully applied on the server.
struct ClientCheckpoint {
  std::uint64_t session = 0;
  int next_episode = 1;
  std::uint64_t next_seq = 1;
  std::map<int, re::DesirabilityTable> snapshots;
  ClientMetrics metrics;
};

class SessionAborted : public Error {
 public:
  SessionAborted(const std::string& what, ClientCheckpoint checkpoint)
      : Error(what), checkpoint_(std::move(checkpoint)) {}
  const ClientCheckpoint& checkpoint() const { return checkpoint_; }

 private:
  ClientCheckpoint checkpoint_;
};

// The server answered with an Error message.
class ServerRejected : public Error {
 public:
  ServerRejected(ErrorCode code, const std::string& detail)
      : Error(std::string("server error (") + ErrorCodeName(code) + "): " + detail), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

std::unique_ptr<he::KeyHolder> MakeKeyHolder(const SessionConfig& config);

// Called with the decrypted table whenever one is fetched.
using TableCallback = std::function<void(int k, const re::DesirabilityTable& z)>;

// Trusted side: owns the secret key, samples episodes from the same streams
// as plaintext Z-learning, encrypts each step cost and answers refresh
// requests by decrypting and re-encrypting.
class SynthClient {
 public:
  SynthClient(const re::ReProblem& problem, SessionConfig config);

  const SessionConfig& config() const { return config_; }
  const he::ExpApproxConfig& exp_config() const { return exp_; }
  he::KeyHolder& keys() { return *keys_; }

  // Throws SessionAborted on transport loss and ServerRejected on an Error
  // reply.
  SessionResult Run(Transport& link, const TableCallback& on_table = {});
  // Rolls the server back to the checkpoint's episode and continues.
  SessionResult Resume(Transport& link, const ClientCheckpoint& checkpoint,
                       const TableCallback& on_table = {});

  re::DesirabilityTable DecryptTable(const std::vector<CipherEntry>& entries);

 private:
  SessionResult Continue(Transport& link, const TableCallback& on_table);
  Message Exchange(Transport& link, MessageBody body);
  FinalTable FetchTable(Transport& link);
  void RunEpisode(Transport& link, int k);

  const re::ReProblem& problem_;
  SessionConfig config_;
  he::ExpApproxConfig exp_;
  std::unique_ptr<he::KeyHolder> keys_;
  ClientCheckpoint state_;
};

}  // namespace encsynth::synth

#endif  // ENCSYNTH_SYNTH_CLIENT_H_
