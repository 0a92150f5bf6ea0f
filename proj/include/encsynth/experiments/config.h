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

#ifndef ENCSYNTH_EXPERIMENTS_CONFIG_H_
#define ENCSYNTH_EXPERIMENTS_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "encsynth/he/exp_approx.h"
#include "encsynth/he/profile.h"
#include "encsynth/he/slot_backends.h"

namespace encsynth::experiments {

// Every field maps to a CLI flag of the same name (underscores become dashes)
// and to the same key in config files and run_config.json.
struct ExperimentConfig {
  std::string maze;
  double step_cost = 0.1;
  double lambda = 0.15;
  double kappa = 1000.0;
  int episodes = 5000;
  int max_steps = 200;
  std::uint64_t seed = 0;

  // Encrypted runs.
  std::string backend = "emulator";
  int ring_dimension = 1 << 14;
  std::vector<int> chain_bits = {60, 30, 30, 30, 30, 60};
  int log2_scale = 40;
  int exp_degree = 8;
  int exp_squarings = -1;  // -1: fewest that map [0, c_max / lambda] into [0, 1]
  std::string exp_method = "taylor";
  double noise_sigma = 0x1p-30;
  double noise_rescale = 0x1p-33;
  std::uint64_t key_seed = 1;
  std::string connect;  // host:port of an encsynth_server; empty runs in-process
  int error_every = 1;

  // Plaintext Z-learning factor: "exact" or "approx" (the encrypted pipeline's
  // polynomial).
  std::string factor = "exact";

  // Baselines.
  double discount = 0.95;
  double vi_tol = 1e-10;
  long long q_steps = 300000;
  double q_epsilon = 0.3;
  int mc_sweeps = 20;
  int mc_episodes = 200;

  std::vector<int> checkpoints = {1, 10, 100, 1000, 5000};
  std::string out = "out";
};

// Throws InvalidArgument on out-of-range values, a missing maze file or an
// HE profile the chosen backend cannot run.
void ValidateConfig(const ExperimentConfig& config);

he::HeProfile ProfileOf(const ExperimentConfig& config);
he::BackendKind BackendOf(const ExperimentConfig& config);
he::NoiseModel NoiseOf(const ExperimentConfig& config);
// Exp approximation for costs up to `c_max`.
he::ExpApproxConfig ExpConfigOf(const ExperimentConfig& config, double c_max);

// Canonical JSON (sorted keys, two-space indent).
std::string ConfigToJson(const ExperimentConfig& config);

}  // namespace encsynth::experiments

#endif  // ENCSYNTH_EXPERIMENTS_CONFIG_H_
