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

#ifndef ENCSYNTH_EXPERIMENTS_COMMANDS_H_
#define ENCSYNTH_EXPERIMENTS_COMMANDS_H_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "encsynth/experiments/config.h"
#include "encsynth/experiments/outputs.h"
#include "encsynth/mdp/grid_world.h"
#include "encsynth/re_rl/problem.h"
#include "encsynth/synth/client.h"

namespace encsynth::experiments {

// Grid world, RE problem (uniform behavior policy) and lsvi ground truth of a
// config's maze.
struct Experiment {
  mdp::GridWorld world;
  re::ReProblem problem;
  re::DesirabilityTable z_star;
  re::ValueTable v_star;
  int lsvi_iterations = 0;
  double bellman_residual = 0.0;
  // ||Z_lsvi - Z_direct||_inf.
  double direct_gap = 0.0;
  double spectral_radius = 0.0;
};

// Throws NonConvergence when lsvi and the direct solve disagree by more
// than 1e-8.
Experiment LoadExperiment(const ExperimentConfig& config);

struct LearningOutcome {
  ErrorSeries series;
  re::DesirabilityTable z;
  std::map<int, re::DesirabilityTable> snapshots;
};

struct EncryptedOutcome {
  LearningOutcome learning;
  synth::ServerMetrics server;
  synth::ClientMetrics client;
};

// Each command validates `config`, writes its files into config.out and
// returns what it wrote. Files: run_config.json and metrics.json always;
//   vi         z_star.csv, value_star.csv
//   zlearn     error_series.csv, value_k<k>.csv
//   encrypted  error_series.csv, value_k<k>.csv
//   baselines  value_vi.csv, q_learning.csv
Experiment CmdVi(const ExperimentConfig& config);
LearningOutcome CmdZlearn(const ExperimentConfig& config);
EncryptedOutcome CmdEncrypted(const ExperimentConfig& config);
void CmdBaselines(const ExperimentConfig& config);
// Joins the error series and metrics of several run directories into
// compare.csv and compare.json under `out`.
void CmdCompare(const std::vector<std::string>& run_dirs, const std::string& out);

// Runs `command` once per seed, concurrently, with outputs in
// <out>/seed_<seed>. Rethrows the first failure after all workers finish.
void RunSeeds(const ExperimentConfig& config, const std::vector<std::uint64_t>& seeds,
              const std::function<void(const ExperimentConfig&)>& command);

}  // namespace encsynth::experiments

#endif  // ENCSYNTH_EXPERIMENTS_COMMANDS_H_
