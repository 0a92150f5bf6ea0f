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

#include "encsynth/generic_rl/q_learning.h"

#include <limits>

#include "encsynth/common/error.h"
#include "encsynth/mdp/episode.h"

namespace encsynth::rl {

StepSizeSchedule CountSchedule(double kappa) {
  return [kappa](long long visits) { return kappa / (kappa + static_cast<double>(visits)); };
}

MdpEnvironment::MdpEnvironment(const mdp::TabularMdp& mdp)
    : mdp_(mdp), spawn_(mdp.NonAbsorbingStates()) {
  if (spawn_.empty()) throw InvalidArgument("MdpEnvironment: no non-absorbing state");
}

StateId MdpEnvironment::Reset(Rng& rng) { return spawn_[UniformIndex(rng, spawn_.size())]; }

std::pair<double, StateId> MdpEnvironment::Step(StateId x, ActionId u, Rng& rng) {
  return {mdp_.Cost(x, u), mdp::SampleNext(mdp_, x, u, rng)};
}

ActionId ArgminAction(const QTable& q, StateId x, std::span<const ActionId> actions) {
  ActionId best_u = actions.front();
  double best = q(x, best_u);
  for (ActionId u : actions) {
    if (q(x, u) < best) {
      best = q(x, u);
      best_u = u;
    }
  }
  return best_u;
}

void QLearningUpdate(QTable& q, const Transition& t, std::span<const ActionId> next_actions,
                     double alpha, double gamma) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw PreconditionError("QLearningUpdate: alpha must lie in [0, 1]");
  }
  double next_min = std::numeric_limits<double>::infinity();
  for (ActionId u : next_actions) next_min = std::min(next_min, q(t.next, u));
  q(t.x, t.u) = (1.0 - alpha) * q(t.x, t.u) + alpha * (t.cost + gamma * next_min);
}

QTable QLearningStep(const QTable& q, const Transition& t,
                     std::span<const ActionId> next_actions, double alpha, double gamma) {
  QTable out = q;
  QLearningUpdate(out, t, next_actions, alpha, gamma);
  return out;
}

ActionId EpsilonGreedy(const QTable& q, StateId x, std::span<const ActionId> actions,
                       double epsilon, Rng& rng) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw PreconditionError("EpsilonGreedy: epsilon must lie in [0, 1]");
  }
  if (actions.size() == 1) return actions.front();
  if (UniformUnit(rng) < epsilon) return actions[UniformIndex(rng, actions.size())];
  return ArgminAction(q, x, actions);
}

QTable QLearningRun(Environment& env, const RlConfig& config, long long steps, Rng& rng,
                    const QTable* initial) {
  QTable q = initial ? *initial : QTable(env.num_states(), env.num_actions());
  std::vector<long long> visits(static_cast<std::size_t>(env.num_states()) * env.num_actions(),
                                0);
  StateId x = env.Reset(rng);
  for (long long t = 0; t < steps; ++t) {
    if (env.IsTerminal(x)) x = env.Reset(rng);
    const ActionId u = EpsilonGreedy(q, x, env.ValidActions(x), config.epsilon, rng);
    const auto [cost, next] = env.Step(x, u, rng);
    long long& n = visits[static_cast<std::size_t>(x) * env.num_actions() + u];
    QLearningUpdate(q, Transition{x, u, cost, next}, env.ValidActions(next),
                    config.step_size(n), config.discount);
    ++n;
    x = next;
  }
  return q;
}

}  // namespace encsynth::rl
