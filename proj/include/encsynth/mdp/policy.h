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

#ifndef ENCSYNTH_MDP_POLICY_H_
#define ENCSYNTH_MDP_POLICY_H_

#include <span>
#include <vector>

#include "encsynth/common/rng.h"
#include "encsynth/mdp/tabular_mdp.h"

namespace encsynth::mdp {

// pi(u|x) as a dense S x A table. Rows are nonnegative, sum to 1 within 1e-12
// and put mass only on valid actions of the MDP they were built for.
class StochasticPolicy {
 public:
  StochasticPolicy(const TabularMdp& mdp, std::vector<double> probs);

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  double Prob(StateId x, ActionId u) const { return probs_[Index(x, u)]; }
  std::span<const double> Row(StateId x) const {
    return std::span(probs_).subspan(Index(x, 0), num_actions_);
  }
  ActionId Sample(StateId x, Rng& rng) const;

 private:
  std::size_t Index(StateId x, ActionId u) const {
    return static_cast<std::size_t>(x) * num_actions_ + u;
  }

  int num_states_;
  int num_actions_;
  std::vector<double> probs_;
};

class DeterministicPolicy {
 public:
  DeterministicPolicy(const TabularMdp& mdp, std::vector<ActionId> actions);

  ActionId operator()(StateId x) const { return actions_[x]; }
  const std::vector<ActionId>& actions() const { return actions_; }
  StochasticPolicy ToStochastic(const TabularMdp& mdp) const;

 private:
  std::vector<ActionId> actions_;
};

// b(u|x) = 1/|valid_actions(x)| on valid actions.
StochasticPolicy UniformBehavior(const TabularMdp& mdp);

}  // namespace encsynth::mdp

#endif  // ENCSYNTH_MDP_POLICY_H_
