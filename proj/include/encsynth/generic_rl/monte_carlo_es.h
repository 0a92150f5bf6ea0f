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

#ifndef ENCSYNTH_GENERIC_RL_MONTE_CARLO_ES_H_
#define ENCSYNTH_GENERIC_RL_MONTE_CARLO_ES_H_

#include <cstdint>

#include "encsynth/generic_rl/tables.h"
#include "encsynth/mdp/policy.h"

namespace encsynth::rl {

struct MonteCarloEsConfig {
  int sweeps = 20;                // L
  int episodes_per_pair = 200;    // N
  // Stop each rollout with probability 1 - gamma after every step and sum
  // costs undiscounted. Otherwise the discounted sum is truncated at
  // max_steps, which biases Q by at most gamma^max_steps ||C||_inf / (1-gamma).
  bool geometric_stopping = true;
  int max_steps = 1000;
  std::uint64_t seed = 0;
};

struct MonteCarloEsResult {
  QTable q;
  mdp::DeterministicPolicy policy;
};

// Monte-Carlo exploring starts. Q starts at 0 and the initial policy is Stay
// (or the lowest valid action) everywhere. Rollouts of pair (x0, u0) in sweep
// l use their own seeded stream, so pairs can be evaluated in any order.
MonteCarloEsResult MonteCarloEs(const mdp::TabularMdp& mdp, const MonteCarloEsConfig& config);

}  // namespace encsynth::rl

#endif  // ENCSYNTH_GENERIC_RL_MONTE_CARLO_ES_H_
