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

#include "encsynth/generic_rl/monte_carlo_es.h"

#include <limits>

#include "encsynth/common/error.h"
#include "encsynth/mdp/episode.h"
#include "encsynth/mdp/grid_world.h"

namespace encsynth::rl {

namespace {

// Cost of one rollout that starts with (x0, u0) and then follows `policy`.
double Rollout(const mdp::TabularMdp& mdp, const std::vector<ActionId>& policy, StateId x0,
               ActionId u0, const MonteCarloEsConfig& config, Rng& rng) {
  const double gamma = mdp.discount();
  double total = 0.0;
  double weight = 1.0;
  StateId x = x0;
  ActionId u = u0;
  for (int t = 0; t < config.max_steps; ++t) {
    const double c = mdp.Cost(x, u);
    if (config.geometric_stopping) {
      total += c;
    } else {
      total += weight * c;
      weight *= gamma;
    }
    x = mdp::SampleNext(mdp, x, u, rng);
    if (mdp.IsAbsorbing(x)) break;
    if (config.geometric_stopping && UniformUnit(rng) >= gamma) break;
    u = policy[x];
  }
  return total;
}

}  // namespace

MonteCarloEsResult MonteCarloEs(const mdp::TabularMdp& mdp, const MonteCarloEsConfig& config) {
  if (config.sweeps < 0 || config.episodes_per_pair <= 0) {
    throw InvalidArgument("MonteCarloEs: sweeps >= 0 and episodes_per_pair > 0 required");
  }
  QTable q(mdp.num_states(), mdp.num_actions());
  std::vector<ActionId> policy(mdp.num_states());
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    policy[x] = mdp.IsValid(x, mdp::kStay) ? mdp::kStay : mdp.ValidActions(x).front();
  }
  for (int sweep = 0; sweep < config.sweeps; ++sweep) {
    for (StateId x0 = 0; x0 < mdp.num_states(); ++x0) {
      if (mdp.IsAbsorbing(x0)) continue;
      for (ActionId u0 : mdp.ValidActions(x0)) {
        Rng rng = MakeRng(config.seed, {static_cast<std::uint64_t>(sweep),
                                        static_cast<std::uint64_t>(x0),
                                        static_cast<std::uint64_t>(u0)});
        double sum = 0.0;
        for (int i = 0; i < config.episodes_per_pair; ++i) {
          sum += Rollout(mdp, policy, x0, u0, config, rng);
        }
        q(x0, u0) = sum / config.episodes_per_pair;
      }
    }
    for (StateId x = 0; x < mdp.num_states(); ++x) {
      if (mdp.IsAbsorbing(x)) continue;
      double best = std::numeric_limits<double>::infinity();
      for (ActionId u : mdp.ValidActions(x)) {
        if (q(x, u) < best) {
          best = q(x, u);
          policy[x] = u;
        }
      }
    }
  }
  return {std::move(q), mdp::DeterministicPolicy(mdp, std::move(policy))};
}

}  // namespace encsynth::rl
