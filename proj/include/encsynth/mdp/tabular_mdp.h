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

#ifndef ENCSYNTH_MDP_TABULAR_MDP_H_
#define ENCSYNTH_MDP_TABULAR_MDP_H_

#include <span>
#include <vector>

namespace encsynth::mdp {

using StateId = int;
using ActionId = int;

struct Outcome {
  StateId next;
  double prob;
};

// Finite MDP with per-state valid action sets. Transition and cost entries of
// invalid (state, action) pairs are never read. A discount of exactly 1 marks
// the undiscounted (first-exit) setting, which requires an absorbing state.
//
// Immutable after construction; the constructor validates every invariant and
// throws InvalidArgument on violation.
class TabularMdp {
 public:
  // `outcomes` and `costs` are indexed by x * num_actions + u.
  TabularMdp(int num_states, int num_actions,
             std::vector<std::vector<ActionId>> valid_actions,
             std::vector<std::vector<Outcome>> outcomes,
             std::vector<double> costs, double discount,
             std::vector<StateId> absorbing);

  // Convenience constructor for deterministic transitions: next[x*A+u].
  static TabularMdp Deterministic(int num_states, int num_actions,
                                  std::vector<std::vector<ActionId>> valid_actions,
                                  const std::vector<StateId>& next,
                                  std::vector<double> costs, double discount,
                                  std::vector<StateId> absorbing);

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  double discount() const { return discount_; }
  bool undiscounted() const { return discount_ == 1.0; }
  bool deterministic() const { return deterministic_; }

  std::span<const ActionId> ValidActions(StateId x) const { return valid_[x]; }
  bool IsValid(StateId x, ActionId u) const;
  std::span<const Outcome> Outcomes(StateId x, ActionId u) const {
    return outcomes_[Index(x, u)];
  }
  // Successor under deterministic transitions (F(x, u)).
  StateId Next(StateId x, ActionId u) const;
  double Cost(StateId x, ActionId u) const { return costs_[Index(x, u)]; }
  bool IsAbsorbing(StateId x) const { return is_absorbing_[x]; }
  const std::vector<StateId>& absorbing() const { return absorbing_; }
  std::vector<StateId> NonAbsorbingStates() const;

  TabularMdp WithCosts(std::vector<double> costs) const;
  TabularMdp WithDiscount(double discount) const;

  const std::vector<double>& costs() const { return costs_; }

 private:
  std::size_t Index(StateId x, ActionId u) const {
    return static_cast<std::size_t>(x) * num_actions_ + u;
  }
  void Validate() const;

  int num_states_;
  int num_actions_;
  std::vector<std::vector<ActionId>> valid_;
  std::vector<std::vector<Outcome>> outcomes_;
  std::vector<double> costs_;
  double discount_;
  std::vector<StateId> absorbing_;
  std::vector<bool> is_absorbing_;
  bool deterministic_ = true;
};

}  // namespace encsynth::mdp

#endif  // ENCSYNTH_MDP_TABULAR_MDP_H_
