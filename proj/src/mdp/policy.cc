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

#include "encsynth/mdp/policy.h"

#include <cmath>
#include <string>

#include "encsynth/common/error.h"

namespace encsynth::mdp {

StochasticPolicy::StochasticPolicy(const TabularMdp& mdp, std::vector<double> probs)
    : num_states_(mdp.num_states()),
      num_actions_(mdp.num_actions()),
      probs_(std::move(probs)) {
  if (probs_.size() != static_cast<std::size_t>(num_states_) * num_actions_) {
    throw InvalidArgument("StochasticPolicy: table size mismatch");
  }
  for (StateId x = 0; x < num_states_; ++x) {
    double sum = 0.0;
    for (ActionId u = 0; u < num_actions_; ++u) {
      const double p = probs_[Index(x, u)];
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw InvalidArgument("StochasticPolicy: invalid probability at state " +
                              std::to_string(x));
      }
      if (p > 0.0 && !mdp.IsValid(x, u)) {
        throw InvalidArgument("StochasticPolicy: mass on invalid action " +
                              std::to_string(u) + " at state " + std::to_string(x));
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw InvalidArgument("StochasticPolicy: row " + std::to_string(x) + " sums to " +
                            std::to_string(sum));
    }
  }
}

ActionId StochasticPolicy::Sample(StateId x, Rng& rng) const {
  const double r = UniformUnit(rng);
  double acc = 0.0;
  ActionId last = -1;
  for (ActionId u = 0; u < num_actions_; ++u) {
    const double p = probs_[Index(x, u)];
    if (p <= 0.0) continue;
    acc += p;
    last = u;
    if (r < acc) return u;
  }
  return last;  // r landed in the rounding gap below 1.0
}

DeterministicPolicy::DeterministicPolicy(const TabularMdp& mdp,
                                         std::vector<ActionId> actions)
    : actions_(std::move(actions)) {
  if (actions_.size() != static_cast<std::size_t>(mdp.num_states())) {
    throw InvalidArgument("DeterministicPolicy: size mismatch");
  }
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    if (!mdp.IsValid(x, actions_[x])) {
      throw InvalidArgument("DeterministicPolicy: invalid action at state " +
                            std::to_string(x));
    }
  }
}

StochasticPolicy DeterministicPolicy::ToStochastic(const TabularMdp& mdp) const {
  std::vector<double> probs(static_cast<std::size_t>(mdp.num_states()) * mdp.num_actions());
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    probs[static_cast<std::size_t>(x) * mdp.num_actions() + actions_[x]] = 1.0;
  }
  return StochasticPolicy(mdp, std::move(probs));
}

StochasticPolicy UniformBehavior(const TabularMdp& mdp) {
  std::vector<double> probs(static_cast<std::size_t>(mdp.num_states()) * mdp.num_actions());
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    const auto valid = mdp.ValidActions(x);
    const double p = 1.0 / static_cast<double>(valid.size());
    for (ActionId u : valid) probs[static_cast<std::size_t>(x) * mdp.num_actions() + u] = p;
  }
  return StochasticPolicy(mdp, std::move(probs));
}

}  // namespace encsynth::mdp
