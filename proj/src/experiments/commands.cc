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

#include "encsynth/experiments/commands.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

#include "encsynth/common/error.h"
#include "encsynth/generic_rl/monte_carlo_es.h"
#include "encsynth/generic_rl/q_learning.h"
#include "encsynth/generic_rl/value_iteration.h"
#include "encsynth/he/z_update.h"
#include "encsynth/re_rl/linear_system.h"
#include "encsynth/re_rl/policy.h"
#include "encsynth/re_rl/z_learning.h"
#include "encsynth/synth/server.h"
#include "encsynth/synth/transport.h"

namespace encsynth::experiments {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kLsviTol = 1e-13;
constexpr double kDirectAgreement = 1e-8;

double Mean(const ErrorSeries& s, std::size_t from, std::size_t to) {
  if (from >= to) return std::nan("");
  return std::accumulate(s.begin() + from, s.begin() + to, 0.0) / static_cast<double>(to - from);
}

json SeriesSummary(const ErrorSeries& s) {
  json j;
  j["episodes"] = s.size();
  if (s.empty()) return j;
  j["initial_error"] = s.front();
  j["final_error"] = s.back();
  j["min_error"] = *std::min_element(s.begin(), s.end());
  if (s.size() >= 600) {
    j["head_mean_100"] = Mean(s, 0, 100);
    j["tail_mean_500"] = Mean(s, s.size() - 500, s.size());
  }
  return j;
}

json MetricsJson(const synth::ServerMetrics& m) {
  json j;
  j["transitions"] = m.transitions;
  j["updates"] = m.updates;
  j["refresh_rounds"] = m.refresh_rounds;
  j["refreshed_ciphertexts"] = m.refreshed_ciphertexts;
  j["table_requests"] = m.table_requests;
  j["bytes_in"] = m.bytes_in;
  j["bytes_out"] = m.bytes_out;
  json log = json::object();
  for (const auto& [level, count] : m.depth_log) log[std::to_string(level)] = count;
  j["result_level_counts"] = log;
  return j;
}

void WriteCommon(const ExperimentConfig& config, const std::string& command, json metrics) {
  const fs::path dir(config.out);
  WriteFile(dir / "run_config.json", ConfigToJson(config));
  metrics["command"] = command;
  WriteFile(dir / "metrics.json", metrics.dump(2) + "\n");
}

std::vector<int> EmittedCheckpoints(const ExperimentConfig& config) {
  std::vector<int> out;
  for (int k : config.checkpoints) {
    if (k <= config.episodes) out.push_back(k);
  }
  out.push_back(config.episodes);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double ErrorOf(const Experiment& e, const re::DesirabilityTable& z, double lambda) {
  return NormalizedError(e.world.mdp, e.v_star, re::DesirabilityToValue(z, lambda));
}

void WriteLearning(const ExperimentConfig& config, const Experiment& e,
                   const LearningOutcome& outcome) {
  const fs::path dir(config.out);
  WriteFile(dir / "error_series.csv", ErrorSeriesCsv(outcome.series));
  EmitValueSnapshots(dir, e.world, outcome.snapshots, config.lambda);
}

}  // namespace

Experiment LoadExperiment(const ExperimentConfig& config) {
  ValidateConfig(config);
  mdp::GridWorld world = mdp::BuildGridWorld(mdp::LoadMaze(config.maze, config.step_cost));
  re::ReProblem problem(world.mdp, mdp::UniformBehavior(world.mdp), config.lambda);
  const re::LinearSystem system = re::BuildLinearSystem(problem);
  const re::LsviResult lsvi = re::LsviSolve(world.mdp, system, kLsviTol);
  const re::DesirabilityTable direct = re::SolveDirect(world.mdp, system);
  double gap = 0.0;
  for (mdp::StateId x = 0; x < world.mdp.num_states(); ++x) {
    gap = std::max(gap, std::abs(lsvi.z[x] - direct[x]));
  }
  if (gap > kDirectAgreement) {
    throw NonConvergence("lsvi and the direct solve disagree by " + FormatDouble(gap));
  }
  Experiment e{std::move(world), std::move(problem), lsvi.z, {}, lsvi.iterations, 0.0, gap, 0.0};
  e.v_star = re::DesirabilityToValue(e.z_star, config.lambda);
  e.bellman_residual = re::BellmanZResidual(system, e.z_star);
  e.spectral_radius = re::ContractionCheck(system).spectral_radius;
  return e;
}

Experiment CmdVi(const ExperimentConfig& config) {
  Experiment e = LoadExperiment(config);
  const fs::path dir(config.out);
  WriteFile(dir / "z_star.csv", re::DesirabilityToCsv(e.z_star));
  WriteFile(dir / "value_star.csv", ValueGridCsv(e.world, e.v_star));
  json m;
  m["states"] = e.world.mdp.num_states();
  m["lsvi_iterations"] = e.lsvi_iterations;
  m["bellman_residual"] = e.bellman_residual;
  m["direct_gap"] = e.direct_gap;
  m["spectral_radius"] = e.spectral_radius;
  WriteCommon(config, "vi", m);
  return e;
}

LearningOutcome CmdZlearn(const ExperimentConfig& config) {
  const Experiment e = LoadExperiment(config);
  re::ZLearningConfig zc;
  zc.kappa = config.kappa;
  zc.episodes = config.episodes;
  zc.max_steps = config.max_steps;
  zc.seed = config.seed;
  zc.checkpoints = EmittedCheckpoints(config);
  re::CostFactorFn factor;
  if (config.factor == "approx") {
    auto approx = std::make_shared<he::ExpApprox>(ExpConfigOf(config, config.step_cost));
    factor = [approx](double c) { return approx->EvaluatePlain(c); };
  }
  LearningOutcome out{{}, re::DesirabilityTable::Ones(e.world.mdp), {}};
  const re::ZLearningResult r =
      re::ZLearningRun(e.problem, zc, factor, [&](int, const re::DesirabilityTable& z) {
        out.series.push_back(ErrorOf(e, z, config.lambda));
      });
  out.z = r.z;
  out.snapshots = r.snapshots;
  if (std::count(zc.checkpoints.begin(), zc.checkpoints.end(), 0) > 0) {
    out.snapshots.emplace(0, re::DesirabilityTable::Ones(e.world.mdp));
  }
  WriteLearning(config, e, out);
  json m = SeriesSummary(out.series);
  m["transitions"] = r.transitions;
  m["factor"] = config.factor;
  WriteCommon(config, "zlearn", m);
  return out;
}

EncryptedOutcome CmdEncrypted(const ExperimentConfig& config) {
  const Experiment e = LoadExperiment(config);
  synth::SessionConfig sc;
  sc.backend = BackendOf(config);
  sc.profile = ProfileOf(config);
  sc.noise = NoiseOf(config);
  sc.exp = ExpConfigOf(config, config.step_cost);
  sc.kappa = config.kappa;
  sc.episodes = config.episodes;
  sc.max_steps = config.max_steps;
  sc.seed = config.seed;
  sc.key_seed = config.key_seed;
  sc.table_every = config.error_every;
  sc.checkpoints = EmittedCheckpoints(config);
  synth::SynthClient client(e.problem, sc);

  EncryptedOutcome out{{{}, re::DesirabilityTable::Ones(e.world.mdp), {}}, {}, {}};
  std::vector<std::pair<int, double>> sampled;
  const auto on_table = [&](int k, const re::DesirabilityTable& z) {
    if (k % config.error_every == 0) sampled.emplace_back(k, ErrorOf(e, z, config.lambda));
  };
  const auto run = [&]() -> synth::SessionResult {
    if (config.connect.empty()) {
      synth::SynthServer server;
      synth::InProcessTransport link(server.AsHandler());
      return client.Run(link, on_table);
    }
    const auto colon = config.connect.rfind(':');
    if (colon == std::string::npos) throw InvalidArgument("--connect expects host:port");
    int port = 0;
    try {
      port = std::stoi(config.connect.substr(colon + 1));
    } catch (const std::logic_error&) {
    }
    if (port <= 0 || port > 65535) throw InvalidArgument("--connect port out of range");
    auto link = synth::ConnectTcp(config.connect.substr(0, colon), static_cast<std::uint16_t>(port));
    return client.Run(*link, on_table);
  };
  const synth::SessionResult r = run();
  // With --error-every 1 the series has one entry per episode; otherwise the
  // gaps repeat the last sampled value.
  LearningOutcome& learning = out.learning;
  learning.series.assign(config.episodes, 0.0);
  double last = ErrorOf(e, re::DesirabilityTable::Ones(e.world.mdp), config.lambda);
  std::size_t next = 0;
  for (int k = 1; k <= config.episodes; ++k) {
    if (next < sampled.size() && sampled[next].first == k) last = sampled[next++].second;
    learning.series[k - 1] = last;
  }
  if (config.episodes > 0) learning.series.back() = ErrorOf(e, r.z, config.lambda);
  learning.z = r.z;
  learning.snapshots = r.snapshots;
  const std::vector<int> emitted = EmittedCheckpoints(config);
  if (std::count(emitted.begin(), emitted.end(), 0) > 0) {
    learning.snapshots.emplace(0, re::DesirabilityTable::Ones(e.world.mdp));
  }
  out.server = r.server;
  out.client = r.client;
  WriteLearning(config, e, learning);

  json m = SeriesSummary(learning.series);
  m["backend"] = config.backend;
  const he::ExpApprox approx(*sc.exp);
  m["exp"] = {{"degree", sc.exp->degree},
              {"squarings", sc.exp->squarings},
              {"method", he::ExpMethodName(sc.exp->method)},
              {"depth", approx.depth()},
              {"certified_error", approx.epsilon()}};
  m["depth_required"] = {{"cipher_successor", he::DepthRequired(*sc.exp, he::Successor::kCipher)},
                         {"absorbing_successor",
                          he::DepthRequired(*sc.exp, he::Successor::kAbsorbing)}};
  m["server"] = MetricsJson(r.server);
  m["client"] = {{"transitions", r.client.transitions},
                 {"refresh_rounds", r.client.refresh_rounds},
                 {"refreshed_ciphertexts", r.client.refreshed_ciphertexts},
                 {"table_requests", r.client.table_requests},
                 {"bytes_sent", r.client.bytes_sent},
                 {"bytes_received", r.client.bytes_received},
                 {"clamped_entries", r.client.clamped_entries}};
  WriteCommon(config, "encrypted", m);
  return out;
}

void CmdBaselines(const ExperimentConfig& config) {
  ValidateConfig(config);
  const mdp::GridWorld world =
      mdp::BuildGridWorld(mdp::LoadMaze(config.maze, config.step_cost), config.discount);
  const mdp::TabularMdp& m = world.mdp;
  const rl::ValueIterationResult vi = rl::ValueIteration(m, config.vi_tol);
  const rl::QTable q_star = rl::QFromValue(m, vi.values);

  rl::MdpEnvironment env(m);
  rl::RlConfig rc;
  rc.epsilon = config.q_epsilon;
  rc.step_size = rl::CountSchedule(config.kappa);
  rc.discount = config.discount;
  Rng rng = MakeRng(config.seed, {0x71});
  const rl::QTable q = rl::QLearningRun(env, rc, config.q_steps, rng);

  rl::MonteCarloEsConfig mc;
  mc.sweeps = config.mc_sweeps;
  mc.episodes_per_pair = config.mc_episodes;
  mc.seed = config.seed;
  const rl::MonteCarloEsResult es = rl::MonteCarloEs(m, mc);
  int optimal = 0;
  int total = 0;
  for (mdp::StateId x = 0; x < m.num_states(); ++x) {
    if (m.IsAbsorbing(x)) continue;
    ++total;
    double best = INFINITY;
    for (mdp::ActionId u : m.ValidActions(x)) best = std::min(best, q_star(x, u));
    optimal += q_star(x, es.policy(x)) <= best + 1e-9;
  }

  const fs::path dir(config.out);
  WriteFile(dir / "value_vi.csv", ValueGridCsv(world, vi.values));
  WriteFile(dir / "q_learning.csv", rl::QTableToCsv(q, m));
  json j;
  j["discount"] = config.discount;
  j["value_iteration"] = {{"iterations", vi.iterations}, {"residual", vi.residual}};
  j["q_learning"] = {{"steps", config.q_steps},
                     {"max_abs_error_vs_vi", rl::QMaxAbsDiff(q, q_star, m)}};
  j["monte_carlo_es"] = {{"sweeps", config.mc_sweeps},
                         {"episodes_per_pair", config.mc_episodes},
                         {"optimal_action_fraction",
                          total == 0 ? 1.0 : static_cast<double>(optimal) / total}};
  WriteCommon(config, "baselines", j);
}

void CmdCompare(const std::vector<std::string>& run_dirs, const std::string& out) {
  if (run_dirs.empty()) throw InvalidArgument("compare needs at least one run directory");
  std::vector<std::string> names;
  std::vector<ErrorSeries> series;
  json summary = json::object();
  for (const std::string& d : run_dirs) {
    const fs::path dir(d);
    std::string name = dir.filename().string();
    if (name.empty()) name = dir.parent_path().filename().string();
    // Disambiguate equal basenames by position.
    if (std::find(names.begin(), names.end(), name) != names.end()) {
      name += "#" + std::to_string(names.size());
    }
    names.push_back(name);
    const fs::path csv = dir / "error_series.csv";
    series.push_back(fs::exists(csv) ? ParseErrorSeriesCsv(ReadFile(csv)) : ErrorSeries{});
    json entry = json::parse(ReadFile(dir / "metrics.json"), nullptr, false);
    if (entry.is_discarded()) throw IoError("malformed metrics.json in " + d);
    summary[name] = entry;
  }
  std::size_t longest = 0;
  for (const ErrorSeries& s : series) longest = std::max(longest, s.size());
  std::string csv = "episode";
  for (const std::string& n : names) csv += "," + n;
  csv += "\n";
  for (std::size_t k = 0; k < longest; ++k) {
    csv += std::to_string(k + 1);
    for (const ErrorSeries& s : series) {
      csv += ",";
      if (k < s.size()) csv += FormatDouble(s[k]);
    }
    csv += "\n";
  }
  WriteFile(fs::path(out) / "compare.csv", csv);
  WriteFile(fs::path(out) / "compare.json", summary.dump(2) + "\n");
}

void RunSeeds(const ExperimentConfig& config, const std::vector<std::uint64_t>& seeds,
              const std::function<void(const ExperimentConfig&)>& command) {
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> failures(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    ExperimentConfig c = config;
    c.seed = seeds[i];
    c.out = (fs::path(config.out) / ("seed_" + std::to_string(seeds[i]))).string();
    workers.emplace_back([c, &command, &failures, i] {
      try {
        command(c);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    });
  }
  for (std::thread& t : workers) t.join();
  for (const std::exception_ptr& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

}  // namespace encsynth::experiments
