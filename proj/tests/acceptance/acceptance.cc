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

// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "encsynth/common/error.h"
#include "encsynth/common/rng.h"
#include "encsynth/experiments/outputs.h"
#include "encsynth/generic_rl/monte_carlo_es.h"
#include "encsynth/generic_rl/q_learning.h"
#include "encsynth/generic_rl/value_iteration.h"
#include "encsynth/he/exp_approx.h"
#include "encsynth/he/slot_key_holders.h"
#include "encsynth/re_rl/linear_system.h"
#include "encsynth/re_rl/path_integral.h"
#include "encsynth/re_rl/z_learning.h"
#include "encsynth/rlwe/key_holder.h"
#include "encsynth/rlwe/ntt.h"
#include "encsynth/synth/client.h"
#include "encsynth/synth/server.h"
#include "encsynth/synth/transport.h"
#include "he_programs.h"
#include "session_oracles.h"
#include "test_util.h"

namespace encsynth::acceptance {
namespace {

// Criterion 1.
constexpr double kSolverAgreement = 1e-10;
constexpr double kLsviResidual = 1e-10;
constexpr int kRandomMazes = 100;
// Criterion 2.
constexpr double kDefaultLambda = 0.15;
constexpr double kDefaultKappa = 1000.0;
constexpr int kDefaultEpisodes = 5000;
constexpr int kDefaultMaxSteps = 200;
constexpr double kConvergedError = 0.05;
constexpr int kSeeds = 10;
constexpr int kSeedsRequired = 9;
// Criterion 3.
constexpr double kEncryptedFidelity = 0.01;
// Criterion 4.
constexpr int kRlweTrials = 1000;
constexpr double kRlweSlotError = 1e-4;
constexpr double kRlweCircuitError = 1e-3;
constexpr int kRlweCircuits = 20;
// Criterion 6.
constexpr double kViTol = 1e-10;
constexpr double kQError = 0.1;
constexpr double kMcAgreement = 0.9;
// Criterion 7.
constexpr double kStandardErrors = 3.0;
constexpr double kVarianceFactor = 2.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void Note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string Fmt(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

re::ReProblem Uniform(const mdp::TabularMdp& m, double lambda) {
  return re::ReProblem(m, mdp::UniformBehavior(m), lambda);
}

double MaxGap(const mdp::TabularMdp& m, const re::DesirabilityTable& a,
              const re::DesirabilityTable& b) {
  double gap = 0.0;
  for (mdp::StateId x = 0; x < m.num_states(); ++x) gap = std::max(gap, std::abs(a[x] - b[x]));
  return gap;
}

double FinalError(const re::ReProblem& p, const re::ValueTable& v_star,
                  const re::DesirabilityTable& z) {
  return experiments::NormalizedError(p.mdp(), v_star, re::DesirabilityToValue(z, p.lambda()));
}

re::ValueTable GroundTruth(const re::ReProblem& p) {
  const re::LsviResult r = re::LsviSolve(p.mdp(), re::BuildLinearSystem(p), 1e-13);
  return re::DesirabilityToValue(r.z, p.lambda());
}

re::ZLearningConfig DefaultZConfig(std::uint64_t seed) {
  re::ZLearningConfig c;
  c.kappa = kDefaultKappa;
  c.episodes = kDefaultEpisodes;
  c.max_steps = kDefaultMaxSteps;
  c.seed = seed;
  return c;
}

synth::SessionResult RunLocal(synth::SynthClient& client) {
  synth::SynthServer server;
  synth::InProcessTransport link(server.AsHandler());
  return client.Run(link);
}

// 1. lsvi against the direct solve.
Outcome OracleEquivalence() {
  Outcome out;
  double worst_gap = 0.0;
  double worst_residual = 0.0;
  auto check = [&](const re::ReProblem& p) {
    const re::LinearSystem s = re::BuildLinearSystem(p);
    const re::LsviResult lsvi = re::LsviSolve(p.mdp(), s, 1e-13);
    worst_gap = std::max(worst_gap, MaxGap(p.mdp(), lsvi.z, re::SolveDirect(p.mdp(), s)));
    worst_residual = std::max(worst_residual, re::BellmanZResidual(s, lsvi.z));
  };
  check(Uniform(testing::ShippedMaze().mdp, kDefaultLambda));
  Rng rng = MakeRng(2024);
  for (int i = 0; i < kRandomMazes; ++i) {
    const mdp::TabularMdp m = testing::RandomMaze(rng, 5);
    check(Uniform(m, 0.1 + UniformUnit(rng)));
  }
  out.Check(worst_gap <= kSolverAgreement, "solver gap " + Fmt("%.2e", worst_gap));
  out.Check(worst_residual <= kLsviResidual, "residual " + Fmt("%.2e", worst_residual));
  out.Note("1 shipped + " + std::to_string(kRandomMazes) + " random mazes, max gap " +
           Fmt("%.2e", worst_gap) + ", max residual " + Fmt("%.2e", worst_residual));
  return out;
}

// 2. Plaintext Z-learning at the default hyperparameters.
Outcome PlaintextConvergence() {
  Outcome out;
  const re::ReProblem p = Uniform(testing::ShippedMaze().mdp, kDefaultLambda);
  const re::ValueTable v_star = GroundTruth(p);
  int converged = 0;
  double worst = 0.0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const double e = FinalError(p, v_star, re::ZLearningRun(p, DefaultZConfig(seed)).z);
    converged += e <= kConvergedError;
    worst = std::max(worst, e);
  }
  out.Check(converged >= kSeedsRequired, std::to_string(converged) + " seeds converged");
  out.Note(std::to_string(converged) + "/" + std::to_string(kSeeds) +
           " seeds with final error <= " + Fmt("%.2f", kConvergedError) + ", worst " +
           Fmt("%.4f", worst));
  return out;
}

// 3. Encrypted sessions against plaintext learning.
Outcome EncryptedFidelity() {
  Outcome out;
  const re::ReProblem p = Uniform(testing::ShippedMaze().mdp, kDefaultLambda);
  const re::ValueTable v_star = GroundTruth(p);
  synth::SessionConfig config;
  config.backend = he::BackendKind::kEmulator;
  config.profile = he::HeProfile::Default();
  config.kappa = kDefaultKappa;
  config.episodes = kDefaultEpisodes;
  config.max_steps = kDefaultMaxSteps;
  config.seed = 0;
  synth::SynthClient emulated(p, config);
  const synth::SessionResult enc = RunLocal(emulated);
  const double enc_error = FinalError(p, v_star, enc.z);
  const double plain_error = FinalError(p, v_star, re::ZLearningRun(p, DefaultZConfig(0)).z);
  out.Check(std::abs(enc_error - plain_error) <= kEncryptedFidelity, "emulator fidelity");
  out.Note("emulator final error " + Fmt("%.5f", enc_error) + " vs plaintext " +
           Fmt("%.5f", plain_error));

  config.backend = he::BackendKind::kExact;
  synth::SynthClient exact(p, config);
  const synth::SessionResult ex = RunLocal(exact);
  const he::ExpApprox approx(exact.exp_config());
  const re::ZLearningResult oracle =
      re::ZLearningRun(p, DefaultZConfig(0), [&](double c) { return approx.EvaluatePlain(c); });
  out.Check(ex.z == oracle.z, "exact backend table differs from plaintext");
  out.Note(std::string("exact backend ") + (ex.z == oracle.z ? "bit-identical" : "differs") +
           " over " + std::to_string(oracle.transitions) + " updates");
  return out;
}

// 4. RLWE backend at N = 2^12.
Outcome RlweConformance() {
  Outcome out;
  he::HeProfile profile = he::HeProfile::Default();
  profile.ring_dimension = 1 << 12;
  rlwe::RlweKeyHolder keys(profile, 404);
  he::ExactKeyHolder exact(profile);
  const he::Evaluator& ev = keys.evaluator();
  double round_trip = 0.0, add = 0.0, mul = 0.0;
  Rng rng = MakeRng(4);
  for (int t = 0; t < kRlweTrials; ++t) {
    std::vector<double> a(8), b(8);
    for (double& v : a) v = testing::Uniform(rng, -1, 1);
    for (double& v : b) v = testing::Uniform(rng, -1, 1);
    const he::CipherValue ca = keys.Encrypt(a);
    const he::CipherValue cb = keys.Encrypt(b);
    const std::vector<double> ra = keys.Decrypt(ca);
    const std::vector<double> rs = keys.Decrypt(ev.Add(ca, cb));
    const std::vector<double> rm = keys.Decrypt(ev.Rescale(ev.Mul(ca, cb)));
    for (std::size_t i = 0; i < a.size(); ++i) {
      round_trip = std::max(round_trip, std::abs(ra[i] - a[i]));
      add = std::max(add, std::abs(rs[i] - (a[i] + b[i])));
      mul = std::max(mul, std::abs(rm[i] - a[i] * b[i]));
    }
  }
  out.Check(round_trip <= kRlweSlotError, "round trip");
  out.Check(add <= kRlweSlotError, "add");
  out.Check(mul <= kRlweSlotError, "mul+rescale");

  // Depth-4 circuits: x <- x * y_k + c_k with fresh y_k.
  double circuit = 0.0;
  for (int t = 0; t < kRlweCircuits; ++t) {
    std::vector<double> x(16), ys[4];
    double cs[4];
    for (double& v : x) v = testing::Uniform(rng, -2, 2);
    for (int k = 0; k < 4; ++k) {
      ys[k].resize(16);
      for (double& v : ys[k]) v = testing::Uniform(rng, -2, 2);
      cs[k] = testing::Uniform(rng, -1, 1);
    }
    std::vector<std::vector<double>> results;
    for (he::KeyHolder* h : std::vector<he::KeyHolder*>{&exact, &keys}) {
      const he::Evaluator& e = h->evaluator();
      he::CipherValue acc = h->Encrypt(x);
      for (int k = 0; k < 4; ++k) {
        he::CipherValue y = h->Encrypt(ys[k]);
        if (e.kind() != he::BackendKind::kExact) y = e.AlignLevels(y, acc.level);
        acc = e.AddPlain(e.Rescale(e.Mul(acc, y)), cs[k]);
      }
      results.push_back(h->Decrypt(acc));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      circuit = std::max(circuit, std::abs(results[1][i] - results[0][i]));
    }
  }
  out.Check(circuit <= kRlweCircuitError, "depth-4 circuits");

  bool ntt_ok = true;
  for (std::size_t n = 2; n <= 64; n *= 2) {
    const rlwe::u64 q = rlwe::CongruentPrimeBelow(rlwe::u64{1} << 50, 2 * n, {});
    const rlwe::Modulus m(q);
    const rlwe::NttTables ntt(m, n);
    for (int t = 0; t < 20; ++t) {
      std::vector<rlwe::u64> a(n), b(n);
      for (auto& v : a) v = rng() % q;
      for (auto& v : b) v = rng() % q;
      const auto expected = rlwe::NegacyclicProductSchoolbook(a, b, m);
      ntt.Forward(a);
      ntt.Forward(b);
      for (std::size_t i = 0; i < n; ++i) a[i] = m.Mul(a[i], b[i]);
      ntt.Inverse(a);
      ntt_ok &= a == expected;
    }
  }
  out.Check(ntt_ok, "NTT vs schoolbook");
  out.Note(std::to_string(kRlweTrials) + " trials: round trip " + Fmt("%.1e", round_trip) +
           ", add " + Fmt("%.1e", add) + ", mul " + Fmt("%.1e", mul) + "; depth-4 " +
           Fmt("%.1e", circuit) + "; NTT " + (ntt_ok ? "matches" : "differs"));
  return out;
}

// Counts refresh pairs in a client-side transcript. Every RefreshRequest
// must be answered by exactly one RefreshResponse before anything else.
bool RefreshPairsWellFormed(const std::vector<synth::RecordingTransport::Entry>& log,
                            std::uint64_t& pairs) {
  pairs = 0;
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (log[i].sent) continue;
    const synth::Message m = synth::DeserializeMessage(log[i].message);
    if (std::holds_alternative<synth::ErrorReply>(m.body)) return false;
    if (!std::holds_alternative<synth::RefreshRequest>(m.body)) continue;
    if (i + 2 >= log.size() || !log[i + 1].sent) return false;
    const synth::Message resp = synth::DeserializeMessage(log[i + 1].message);
    const synth::Message ack = synth::DeserializeMessage(log[i + 2].message);
    if (!std::holds_alternative<synth::RefreshResponse>(resp.body)) return false;
    if (!std::holds_alternative<synth::Ack>(ack.body)) return false;
    ++pairs;
  }
  return true;
}

// 5. Level budget and refresh accounting.
Outcome DepthAccounting() {
  Outcome out;
  for (const bool rlwe_backend : {false, true}) {
    he::HeProfile profile = he::HeProfile::Default();
    std::unique_ptr<he::KeyHolder> keys;
    if (rlwe_backend) {
      profile.ring_dimension = 1 << 12;
      keys = std::make_unique<rlwe::RlweKeyHolder>(profile, 5);
    } else {
      keys = std::make_unique<he::EmulatorKeyHolder>(profile, he::NoiseModel{});
    }
    const he::Evaluator& ev = keys->evaluator();
    he::CipherValue c = keys->EncryptScalar(1.01);
    int completed = 0;
    bool exhausted_on_fifth = false;
    try {
      for (int i = 0; i < 5; ++i) {
        c = ev.Rescale(ev.Mul(c, c));
        ++completed;
      }
    } catch (const he::LevelExhausted&) {
      exhausted_on_fifth = completed == 4;
    }
    out.Check(exhausted_on_fifth, std::string(rlwe_backend ? "rlwe" : "emulator") +
                                      " fifth multiplication");
  }

  const mdp::GridWorld small = testing::SmallMaze();
  const re::ReProblem p = Uniform(small.mdp, kDefaultLambda);
  std::uint64_t total_rounds = 0;
  for (int degree : {2, 3, 4, 8}) {
    synth::SessionConfig config;
    config.episodes = 100;
    config.seed = 50 + degree;
    he::ExpApproxConfig exp = he::DefaultExpApproxConfig(0.1, kDefaultLambda);
    exp.degree = degree;
    config.exp = exp;
    synth::SynthClient client(p, config);
    synth::SynthServer server;
    synth::InProcessTransport local(server.AsHandler());
    synth::RecordingTransport link(local);
    const synth::SessionResult r = client.Run(link);
    const testing::RefreshPrediction predicted = testing::PredictRefreshes(
        p, config.episodes, config.max_steps, config.seed, 4, he::ExpDepth(exp));
    std::uint64_t pairs = 0;
    const bool well_formed = RefreshPairsWellFormed(link.transcript(), pairs);
    const std::string tag = "degree " + std::to_string(degree);
    out.Check(well_formed, tag + " refresh pairs");
    out.Check(pairs == r.server.refresh_rounds, tag + " pair count");
    out.Check(r.server.refresh_rounds == predicted.rounds, tag + " refresh rounds " +
                                                               std::to_string(r.server.refresh_rounds) +
                                                               " vs " +
                                                               std::to_string(predicted.rounds));
    out.Check(r.server.refreshed_ciphertexts == predicted.ciphertexts, tag + " ciphertexts");
    out.Check(r.server.updates == r.server.transitions, tag + " updates");
    total_rounds += r.server.refresh_rounds;
  }
  out.Note("5th multiplication exhausts the chain on emulator and RLWE; 4 sessions, " +
           std::to_string(total_rounds) + " refresh rounds, all matching the prediction");
  return out;
}

// 6. Generic-RL oracles on the 3x3 maze.
Outcome GenericRl() {
  Outcome out;
  const mdp::GridWorld world = testing::SmallMaze();
  const mdp::TabularMdp m = world.mdp.WithDiscount(0.9);
  const rl::ValueIterationResult vi = rl::ValueIteration(m, kViTol);
  const double residual = [&] {
    const rl::ValueTable tv = rl::BellmanBackup(m, vi.values);
    double r = 0.0;
    for (std::size_t x = 0; x < tv.size(); ++x) r = std::max(r, std::abs(tv[x] - vi.values[x]));
    return r;
  }();
  out.Check(residual <= kViTol, "VI residual");
  const rl::QTable q_star = rl::QFromValue(m, rl::ValueIteration(m, 1e-13).values);
  rl::MdpEnvironment env(m);
  rl::RlConfig cfg;
  Rng rng = MakeRng(17);
  const rl::QTable q = rl::QLearningRun(env, cfg, 200000, rng);
  const double q_error = rl::QMaxAbsDiff(q, q_star, m);
  out.Check(q_error <= kQError, "Q-learning error " + Fmt("%.3f", q_error));
  rl::MonteCarloEsConfig mc;
  mc.seed = 11;
  const rl::MonteCarloEsResult es = rl::MonteCarloEs(m, mc);
  int optimal = 0, total = 0;
  for (mdp::StateId x = 0; x < m.num_states(); ++x) {
    if (m.IsAbsorbing(x)) continue;
    ++total;
    double best = INFINITY;
    for (mdp::ActionId u : m.ValidActions(x)) best = std::min(best, q_star(x, u));
    optimal += q_star(x, es.policy(x)) <= best + 1e-9;
  }
  const double agreement = static_cast<double>(optimal) / total;
  out.Check(agreement >= kMcAgreement, "MC-ES agreement");
  out.Note("VI residual " + Fmt("%.1e", residual) + ", Q error " + Fmt("%.2e", q_error) +
           ", MC-ES optimal on " + Fmt("%.0f%%", 100 * agreement) + " of states");
  return out;
}

// 7. Path-integral estimator on the two-action example.
Outcome PathIntegral() {
  Outcome out;
  const mdp::TabularMdp m = mdp::TabularMdp::Deterministic(
      2, 2, {{0, 1}, {0, 1}}, {1, 1, 1, 1}, {1.0, 2.0, 0.0, 0.0}, 1.0, {1});
  const re::ReProblem p = Uniform(m, 1.0);
  const double exact = 0.5 * std::exp(-1.0) + 0.5 * std::exp(-2.0);
  std::vector<mdp::Episode> eps;
  Rng rng = MakeRng(77);
  for (int i = 0; i < 100000; ++i) eps.push_back(mdp::SimulateEpisode(m, p.behavior(), 0, 10, rng));
  const re::PathIntegralStats s = re::PathIntegralEstimateWithError(eps, 1.0);
  const double z_scores = std::abs(s.estimate - exact) / s.standard_error;
  out.Check(z_scores <= kStandardErrors, "estimate outside the band");

  constexpr int kBatches = 200;
  std::vector<double> n_var;
  for (int n : {100, 1000, 10000}) {
    double mean = 0.0, m2 = 0.0;
    for (int b = 0; b < kBatches; ++b) {
      Rng r = MakeRng(31, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(b)});
      std::vector<mdp::Episode> batch;
      batch.reserve(n);
      for (int i = 0; i < n; ++i) batch.push_back(mdp::SimulateEpisode(m, p.behavior(), 0, 5, r));
      const double est = re::PathIntegralEstimate(batch, 1.0);
      const double d = est - mean;
      mean += d / (b + 1);
      m2 += d * (est - mean);
    }
    n_var.push_back(n * m2 / (kBatches - 1));
  }
  const auto [lo, hi] = std::minmax_element(n_var.begin(), n_var.end());
  out.Check(*hi <= kVarianceFactor * *lo, "N * Var spread");
  out.Note("N=1e5 estimate " + Fmt("%.6f", s.estimate) + " vs " + Fmt("%.6f", exact) + " (" +
           Fmt("%.2f", z_scores) + " s.e.); N*Var spread " + Fmt("%.2f", *hi / *lo));
  return out;
}

// 8. Protocol robustness.
Outcome Protocol() {
  Outcome out;
  he::EmulatorEvaluator ev(he::HeProfile::Default(), he::NoiseModel::None());
  const Bytes cipher = he::SerializeCipher(ev.Make({0.5}, 3, 40.0));
  synth::SessionInit init;
  init.num_states = 2;
  init.table = {{0, cipher}};
  synth::FinalTable table;
  table.table = {{0, cipher}};
  table.metrics.depth_log = {{0, 2}};
  const std::vector<synth::Message> variants = {
      {1, 1, init},
      {1, 2, synth::Transition{1, 2, 0, synth::kAbsorbingMarker, cipher}},
      {1, 3, synth::RefreshRequest{{{synth::kFactorEntry, cipher}}}},
      {1, 4, synth::RefreshResponse{{{0, cipher}}}},
      {1, 5, synth::TableRequest{}},
      {1, 6, table},
      {1, 7, synth::Ack{}},
      {1, 8, synth::ErrorReply{synth::ErrorCode::kProtocol, "x"}},
      {1, 9, synth::Resume{3}}};
  bool round_trip = true;
  bool truncation = true;
  for (const synth::Message& m : variants) {
    const Bytes b = synth::SerializeMessage(m);
    round_trip &= synth::SerializeMessage(synth::DeserializeMessage(b)) == b &&
                  synth::DeserializeMessage(b) == m;
    for (std::size_t n = 0; n < b.size(); ++n) {
      try {
        synth::DeserializeMessage(std::span(b.data(), n));
        truncation = false;
      } catch (const MalformedInput& e) {
        truncation &= e.offset() <= n;
      }
    }
  }
  out.Check(round_trip, "round trip");
  out.Check(truncation, "truncation");

  // Same seed over both transports.
  const re::ReProblem p = Uniform(testing::SmallMaze().mdp, kDefaultLambda);
  synth::SessionConfig config;
  config.episodes = 20;
  config.seed = 8;
  synth::SynthClient a(p, config);
  synth::SynthServer server_a;
  synth::InProcessTransport local(server_a.AsHandler());
  synth::RecordingTransport rec_a(local);
  a.Run(rec_a);
  synth::SynthClient b(p, config);
  synth::SynthServer server_b;
  synth::TcpListener listener(0);
  std::thread serving([&] {
    auto conn = listener.Accept();
    synth::Serve(*conn, server_b.AsHandler());
  });
  auto conn = synth::ConnectTcp("127.0.0.1", listener.port());
  synth::RecordingTransport rec_b(*conn);
  b.Run(rec_b);
  conn->Close();
  serving.join();
  const bool same = rec_a.transcript() == rec_b.transcript();
  out.Check(same, "transcripts differ");

  // Corrupted and truncated frames against a live session.
  std::vector<Bytes> requests;
  for (const auto& e : rec_a.transcript()) {
    if (e.sent) requests.push_back(e.message);
  }
  synth::SynthServer target;
  target.Handle(requests.front());
  Rng rng = MakeRng(88);
  int structured = 0;
  int malformed_errors = 0;
  constexpr int kMutations = 3000;
  for (int i = 0; i < kMutations; ++i) {
    Bytes frame = requests[UniformIndex(rng, requests.size())];
    const std::size_t kind = UniformIndex(rng, 3);
    if (kind == 0) {
      frame.resize(UniformIndex(rng, frame.size()));
    } else if (kind == 1) {
      frame[UniformIndex(rng, frame.size())] ^= static_cast<std::uint8_t>(1 + UniformIndex(rng, 255));
    } else {
      frame.insert(frame.begin() + static_cast<long>(UniformIndex(rng, frame.size() + 1)),
                   static_cast<std::uint8_t>(rng()));
    }
    try {
      const synth::Message reply = synth::DeserializeMessage(target.Handle(frame));
      ++structured;
      if (kind == 0) {
        const auto* err = std::get_if<synth::ErrorReply>(&reply.body);
        malformed_errors += err != nullptr && err->code == synth::ErrorCode::kMalformed;
      }
    } catch (const std::exception&) {
    }
  }
  out.Check(structured == kMutations, "unstructured replies");
  out.Note("9 variants round-trip, every truncation rejected, " +
           std::to_string(rec_a.transcript().size()) + "-message transcripts " +
           (same ? "identical" : "differ") + " across transports, " +
           std::to_string(structured) + "/" + std::to_string(kMutations) +
           " corrupted frames answered with structured replies");
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  Outcome (*run)();
};

}  // namespace
}  // namespace encsynth::acceptance

int main() {
  using namespace encsynth::acceptance;
  const Criterion criteria[] = {
      {1, "oracle equivalence", 5, OracleEquivalence},
      {2, "plaintext Z-learning convergence", 60, PlaintextConvergence},
      {3, "encrypted vs plaintext fidelity", 300, EncryptedFidelity},
      {4, "RLWE backend conformance", 120, RlweConformance},
      {5, "depth accounting", 120, DepthAccounting},
      {6, "generic-RL oracles", 60, GenericRl},
      {7, "path-integral estimator", 120, PathIntegral},
      {8, "protocol robustness", 120, Protocol},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      o.pass = false;
      o.detail += "; FAILED runtime budget " + Fmt("%.0f s", c.budget_seconds);
    }
    failed += !o.pass;
    std::printf("criterion %d [%s]: %s (%s; %.1f s)\n", c.id, c.name, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
