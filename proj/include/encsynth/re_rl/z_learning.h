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

#ifndef ENCSYNTH_RE_RL_Z_LEARNING_H_
#define ENCSYNTH_RE_RL_Z_LEARNING_H_

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "encsynth/common/rng.h"
#include "encsynth/mdp/episode.h"
#include "encsynth/re_rl/problem.h"

namespace encsynth::re {

// alpha = kappa / (kappa + n(x)), with n(x) the number of earlier updates of x.
// The first update of a state therefore uses alpha = 1.
class LearningRateSchedule {
 public:
  LearningRateSchedule(double kappa, int num_states);

  // Rate for the next update of x; does not count it.
  double Peek(StateId x) const;
  // Rate for the next update of x, then counts the update.
  double Next(StateId x);

  double kappa() const { return kappa_; }
  long long visits(StateId x) const { return visits_[x]; }
  const std::vector<long long>& visits() const { return visits_; }

 private:
  double kappa_;
  std::vector<long long> visits_;
};

// (1 - alpha) z_x + (alpha * factor) * z_next. The encrypted kernel follows
// the same operation order, so the exact backend reproduces it bit for bit.
inline double ZUpdateValue(double z_x, double z_next, double factor, double alpha) {
  return (1.0 - alpha) * z_x + (alpha * factor) * z_next;
}

// Updates z[x] with factor e^{-cost/lambda}; z[next] reads 1 when next is
// absorbing. Requires alpha in [0, 1] and x non-absorbing.
void ZLearningStep(const mdp::TabularMdp& mdp, DesirabilityTable& z, StateId x, double cost,
                   StateId next, double alpha, double lambda);

// Maps a transition cost to the multiplicative factor e^{-c/lambda}, or to an
// approximation of it.
using CostFactorFn = std::function<double(double cost)>;
CostFactorFn ExactCostFactor(double lambda);

struct ZLearningConfig {
  double kappa = 1000.0;
  int episodes = 5000;
  int max_steps = 200;
  std::uint64_t seed = 0;
  // 1-based episode indices after which a snapshot is taken.
  std::vector<int> checkpoints;
};

struct ZLearningResult {
  DesirabilityTable z;
  std::map<int, DesirabilityTable> snapshots;
  std::vector<long long> visits;
  long long transitions = 0;
};

// Episode k (1-based) starts at a uniformly drawn non-absorbing state and
// follows the behavior policy, all drawn from MakeRng(seed, {k}).
mdp::Episode SampleTrainingEpisode(const ReProblem& problem, int k, int max_steps,
                                   std::uint64_t seed);

// Called after every episode with its index and the current table.
using EpisodeCallback = std::function<void(int k, const DesirabilityTable& z)>;

// Z-learning from Z = 1. `factor` defaults to ExactCostFactor(lambda).
ZLearningResult ZLearningRun(const ReProblem& problem, const ZLearningConfig& config,
                             CostFactorFn factor = {}, const EpisodeCallback& on_episode = {});

}  // namespace encsynth::re

#endif  // ENCSYNTH_RE_RL_Z_LEARNING_H_
