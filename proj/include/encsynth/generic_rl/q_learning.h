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

#ifndef ENCSYNTH_GENERIC_RL_Q_LEARNING_H_
#define ENCSYNTH_GENERIC_RL_Q_LEARNING_H_

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "encsynth/common/rng.h"
#include "encsynth/generic_rl/tables.h"

namespace encsynth::rl {

struct Transition {
  StateId x;
  ActionId u;
  double cost;
  StateId next;
};

// Step size as a function of the visit count n(x, u) before the update.
using StepSizeSchedule = std::function<double(long long visits)>;

// kappa / (kappa + n).
StepSizeSchedule CountSchedule(double kappa = 1000.0);

struct RlConfig {
  double epsilon = 0.3;
  StepSizeSchedule step_size = CountSchedule();
  double discount = 0.9;
  double tolerance = 1e-9;
};

// Environment seen by model-free learners.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual StateId Reset(Rng& rng) = 0;
  virtual std::span<const ActionId> ValidActions(StateId x) const = 0;
  virtual int num_states() const = 0;
  virtual int num_actions() const = 0;
  // Returns (cost, next state).
  virtual std::pair<double, StateId> Step(StateId x, ActionId u, Rng& rng) = 0;
  virtual bool IsTerminal(StateId x) const = 0;
};

// Simulator over a TabularMdp. Resets spawn uniformly over non-absorbing states.
class MdpEnvironment : public Environment {
 public:
  explicit MdpEnvironment(const mdp::TabularMdp& mdp);
  StateId Reset(Rng& rng) override;
  std::span<const ActionId> ValidActions(StateId x) const override {
    return mdp_.ValidActions(x);
  }
  int num_states() const override { return mdp_.num_states(); }
  int num_actions() const override { return mdp_.num_actions(); }
  std::pair<double, StateId> Step(StateId x, ActionId u, Rng& rng) override;
  bool IsTerminal(StateId x) const override { return mdp_.IsAbsorbing(x); }

 private:
  const mdp::TabularMdp& mdp_;
  std::vector<StateId> spawn_;
};

// Q(x,u) <- (1-alpha) Q(x,u) + alpha [c + gamma min_u' Q(x',u')]; the min runs
// over `next_actions` (the valid actions of x'). Returns the updated copy.
QTable QLearningStep(const QTable& q, const Transition& t,
                     std::span<const ActionId> next_actions, double alpha, double gamma);
void QLearningUpdate(QTable& q, const Transition& t, std::span<const ActionId> next_actions,
                     double alpha, double gamma);

// argmin over `actions`, lowest id on ties.
ActionId ArgminAction(const QTable& q, StateId x, std::span<const ActionId> actions);

// Greedy w.p. 1 - epsilon, uniform over `actions` w.p. epsilon.
ActionId EpsilonGreedy(const QTable& q, StateId x, std::span<const ActionId> actions,
                       double epsilon, Rng& rng);

// T steps of Q-learning from Q = 0 (or `initial`) with epsilon-greedy
// exploration and per-pair visit counts. Terminal states trigger a reset.
QTable QLearningRun(Environment& env, const RlConfig& config, long long steps, Rng& rng,
                    const QTable* initial = nullptr);

}  // namespace encsynth::rl

#endif  // ENCSYNTH_GENERIC_RL_Q_LEARNING_H_
