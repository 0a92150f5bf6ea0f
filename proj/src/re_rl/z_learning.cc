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

#include "encsynth/re_rl/z_learning.h"

#include <cmath>
#include <string>

#include "encsynth/common/error.h"

namespace encsynth::re {

LearningRateSchedule::LearningRateSchedule(double kappa, int num_states)
    : kappa_(kappa), visits_(num_states, 0) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw InvalidArgument("LearningRateSchedule: kappa must be positive and finite");
  }
}

double LearningRateSchedule::Peek(StateId x) const {
  return kappa_ / (kappa_ + static_cast<double>(visits_[x]));
}

double LearningRateSchedule::Next(StateId x) {
  const double alpha = Peek(x);
  ++visits_[x];
  return alpha;
}

void ZLearningStep(const mdp::TabularMdp& mdp, DesirabilityTable& z, StateId x, double cost,
                   StateId next, double alpha, double lambda) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw PreconditionError("ZLearningStep: alpha must lie in [0, 1]");
  }
  if (mdp.IsAbsorbing(x)) throw PreconditionError("ZLearningStep: x is absorbing");
  const double z_next = mdp.IsAbsorbing(next) ? 1.0 : z[next];
  z.Set(x, ZUpdateValue(z[x], z_next, std::exp(-cost / lambda), alpha));
}

CostFactorFn ExactCostFactor(double lambda) {
  return [lambda](double cost) { return std::exp(-cost / lambda); };
}

mdp::Episode SampleTrainingEpisode(const ReProblem& problem, int k, int max_steps,
                                   std::uint64_t seed) {
  const mdp::TabularMdp& mdp = problem.mdp();
  const std::vector<StateId> starts = mdp.NonAbsorbingStates();
  if (starts.empty()) throw PreconditionError("SampleTrainingEpisode: every state is absorbing");
  Rng rng = MakeRng(seed, {static_cast<std::uint64_t>(k)});
  const StateId x0 = starts[UniformIndex(rng, starts.size())];
  return mdp::SimulateEpisode(mdp, problem.behavior(), x0, max_steps, rng);
}

ZLearningResult ZLearningRun(const ReProblem& problem, const ZLearningConfig& config,
                             CostFactorFn factor, const EpisodeCallback& on_episode) {
  const mdp::TabularMdp& mdp = problem.mdp();
  if (config.episodes < 0 || config.max_steps <= 0) {
    throw InvalidArgument("ZLearningRun: episodes must be >= 0 and max_steps > 0");
  }
  if (!factor) factor = ExactCostFactor(problem.lambda());
  LearningRateSchedule schedule(config.kappa, mdp.num_states());
  ZLearningResult result{DesirabilityTable::Ones(mdp), {}, {}, 0};
  DesirabilityTable& z = result.z;
  std::vector<bool> wanted(config.episodes + 1, false);
  for (int c : config.checkpoints) {
    if (c >= 1 && c <= config.episodes) wanted[c] = true;
  }
  for (int k = 1; k <= config.episodes; ++k) {
    const mdp::Episode episode = SampleTrainingEpisode(problem, k, config.max_steps, config.seed);
    for (std::size_t t = 0; t < episode.steps.size(); ++t) {
      const mdp::Step& s = episode.steps[t];
      const StateId next = episode.NextState(t);
      const double z_next = mdp.IsAbsorbing(next) ? 1.0 : z[next];
      z.Set(s.state, ZUpdateValue(z[s.state], z_next, factor(s.cost), schedule.Next(s.state)));
      ++result.transitions;
    }
    if (wanted[k]) result.snapshots.emplace(k, z);
    if (on_episode) on_episode(k, z);
  }
  result.visits = schedule.visits();
  return result;
}

}  // namespace encsynth::re
