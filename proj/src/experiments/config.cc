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

#include "encsynth/experiments/config.h"

#include <filesystem>

#include <nlohmann/json.hpp>

#include "encsynth/common/error.h"
#include "encsynth/he/cipher.h"
#include "encsynth/rlwe/params.h"

namespace encsynth::experiments {

he::HeProfile ProfileOf(const ExperimentConfig& config) {
  return {config.ring_dimension, config.chain_bits, config.log2_scale};
}

he::BackendKind BackendOf(const ExperimentConfig& config) { return he::ParseBackend(config.backend); }

he::NoiseModel NoiseOf(const ExperimentConfig& config) {
  return {config.noise_sigma, config.noise_rescale, config.seed};
}

he::ExpApproxConfig ExpConfigOf(const ExperimentConfig& config, double c_max) {
  he::ExpApproxConfig exp = he::DefaultExpApproxConfig(c_max, config.lambda);
  exp.degree = config.exp_degree;
  exp.method = he::ParseExpMethod(config.exp_method);
  if (config.exp_squarings >= 0) exp.squarings = config.exp_squarings;
  return exp;
}

void ValidateConfig(const ExperimentConfig& c) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument(what);
  };
  require(!c.maze.empty(), "--maze is required");
  require(std::filesystem::is_regular_file(c.maze), "maze file not found: " + c.maze);
  require(c.step_cost > 0.0, "--step-cost must be positive");
  require(c.lambda > 0.0, "--lambda must be positive");
  require(c.kappa > 0.0, "--kappa must be positive");
  require(c.episodes >= 0, "--episodes must be >= 0");
  require(c.max_steps > 0, "--max-steps must be positive");
  require(c.error_every >= 1, "--error-every must be >= 1");
  require(c.discount > 0.0 && c.discount < 1.0, "--discount must lie in (0, 1)");
  require(c.vi_tol > 0.0, "--vi-tol must be positive");
  require(c.q_steps >= 0, "--q-steps must be >= 0");
  require(c.q_epsilon >= 0.0 && c.q_epsilon <= 1.0, "--q-epsilon must lie in [0, 1]");
  require(c.mc_sweeps >= 1 && c.mc_episodes >= 1, "--mc-sweeps and --mc-episodes must be >= 1");
  require(c.factor == "exact" || c.factor == "approx", "--factor must be exact or approx");
  require(c.noise_sigma >= 0.0 && c.noise_rescale >= 0.0, "noise magnitudes must be >= 0");
  for (int k : c.checkpoints) require(k >= 0, "checkpoints must be >= 0");
  const he::BackendKind backend = BackendOf(c);
  const he::HeProfile profile = ProfileOf(c);
  profile.Validate();
  he::ExpApprox(ExpConfigOf(c, c.step_cost));
  const int depth = he::ExpDepth(ExpConfigOf(c, c.step_cost));
  if (backend != he::BackendKind::kExact) {
    require(depth <= profile.usable_levels(),
            "exp approximation depth " + std::to_string(depth) + " exceeds the " +
                std::to_string(profile.usable_levels()) + " levels of the profile");
  }
  if (backend == he::BackendKind::kRlwe) rlwe::MakeRlweParams(profile);
}

std::string ConfigToJson(const ExperimentConfig& c) {
  nlohmann::json j;
  j["maze"] = c.maze;
  j["step-cost"] = c.step_cost;
  j["lambda"] = c.lambda;
  j["kappa"] = c.kappa;
  j["episodes"] = c.episodes;
  j["max-steps"] = c.max_steps;
  j["seed"] = c.seed;
  j["backend"] = c.backend;
  j["ring-dimension"] = c.ring_dimension;
  j["chain-bits"] = c.chain_bits;
  j["log2-scale"] = c.log2_scale;
  j["exp-degree"] = c.exp_degree;
  j["exp-squarings"] = c.exp_squarings;
  j["exp-method"] = c.exp_method;
  j["noise-sigma"] = c.noise_sigma;
  j["noise-rescale"] = c.noise_rescale;
  j["key-seed"] = c.key_seed;
  j["connect"] = c.connect;
  j["error-every"] = c.error_every;
  j["factor"] = c.factor;
  j["discount"] = c.discount;
  j["vi-tol"] = c.vi_tol;
  j["q-steps"] = c.q_steps;
  j["q-epsilon"] = c.q_epsilon;
  j["mc-sweeps"] = c.mc_sweeps;
  j["mc-episodes"] = c.mc_episodes;
  j["checkpoints"] = c.checkpoints;
  j["out"] = c.out;
  return j.dump(2) + "\n";
}

}  // namespace encsynth::experiments
