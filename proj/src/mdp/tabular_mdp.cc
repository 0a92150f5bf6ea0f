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

#include "encsynth/mdp/tabular_mdp.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "encsynth/common/error.h"

namespace encsynth::mdp {

namespace {
constexpr double kRowSumTolerance = 1e-12;
}  // namespace

TabularMdp::TabularMdp(int num_states, int num_actions,
                       std::vector<std::vector<ActionId>> valid_actions,
                       std::vector<std::vector<Outcome>> outcomes,
                       std::vector<double> costs, double discount,
                       std::vector<StateId> absorbing)
    : num_states_(num_states),
      num_actions_(num_actions),
      valid_(std::move(valid_actions)),
      outcomes_(std::move(outcomes)),
      costs_(std::move(costs)),
      discount_(discount),
      absorbing_(std::move(absorbing)) {
  if (num_states_ <= 0 || num_actions_ <= 0) {
    throw InvalidArgument("TabularMdp: state and action counts must be positive");
  }
  std::sort(absorbing_.begin(), absorbing_.end());
  absorbing_.erase(std::unique(absorbing_.begin(), absorbing_.end()), absorbing_.end());
  is_absorbing_.assign(num_states_, false);
  for (StateId s : absorbing_) {
    if (s < 0 || s >= num_states_) {
      throw InvalidArgument("TabularMdp: absorbing state id out of range");
    }
    is_absorbing_[s] = true;
  }
  for (auto& v : valid_) std::sort(v.begin(), v.end());
  Validate();
  for (StateId x = 0; x < num_states_; ++x) {
    for (ActionId u : valid_[x]) {
      if (outcomes_[Index(x, u)].size() != 1) deterministic_ = false;
    }
  }
}

void TabularMdp::Validate() const {
  const std::size_t pairs = static_cast<std::size_t>(num_states_) * num_actions_;
  if (valid_.size() != static_cast<std::size_t>(num_states_) ||
      outcomes_.size() != pairs || costs_.size() != pairs) {
    throw InvalidArgument("TabularMdp: table sizes do not match state/action counts");
  }
  if (!(discount_ >= 0.0 && discount_ <= 1.0)) {
    throw InvalidArgument("TabularMdp: discount must lie in [0, 1]");
  }
  if (discount_ == 1.0 && absorbing_.empty()) {
    throw InvalidArgument("TabularMdp: undiscounted MDP needs an absorbing state");
  }
  for (StateId x = 0; x < num_states_; ++x) {
    if (valid_[x].empty()) {
      throw InvalidArgument("TabularMdp: state " + std::to_string(x) +
                            " has no valid action");
    }
    for (ActionId u : valid_[x]) {
      if (u < 0 || u >= num_actions_) {
        throw InvalidArgument("TabularMdp: action id out of range");
      }
      const double c = costs_[Index(x, u)];
      if (!std::isfinite(c)) {
        throw InvalidArgument("TabularMdp: non-finite cost at state " + std::to_string(x));
      }
      const auto& row = outcomes_[Index(x, u)];
      if (row.empty()) {
        throw InvalidArgument("TabularMdp: empty transition row");
      }
      double sum = 0.0;
      for (const Outcome& o : row) {
        if (o.next < 0 || o.next >= num_states_) {
          throw InvalidArgument("TabularMdp: next-state id out of range");
        }
        if (!(o.prob >= 0.0)) {
          throw InvalidArgument("TabularMdp: negative transition probability");
        }
        sum += o.prob;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance) {
        throw InvalidArgument("TabularMdp: transition row of state " + std::to_string(x) +
                              " sums to " + std::to_string(sum));
      }
      if (is_absorbing_[x]) {
        if (c != 0.0 || row.size() != 1 || row[0].next != x) {
          throw InvalidArgument("TabularMdp: absorbing state " + std::to_string(x) +
                                " must self-loop with zero cost");
        }
      }
    }
  }
}

TabularMdp TabularMdp::Deterministic(int num_states, int num_actions,
                                     std::vector<std::vector<ActionId>> valid_actions,
                                     const std::vector<StateId>& next,
                                     std::vector<double> costs, double discount,
                                     std::vector<StateId> absorbing) {
  std::vector<std::vector<Outcome>> outcomes(next.size());
  for (std::size_t i = 0; i < next.size(); ++i) outcomes[i] = {Outcome{next[i], 1.0}};
  return TabularMdp(num_states, num_actions, std::move(valid_actions), std::move(outcomes),
                    std::move(costs), discount, std::move(absorbing));
}

bool TabularMdp::IsValid(StateId x, ActionId u) const {
  const auto& v = valid_[x];
  return std::binary_search(v.begin(), v.end(), u);
}

StateId TabularMdp::Next(StateId x, ActionId u) const {
  const auto& row = outcomes_[Index(x, u)];
  if (row.size() != 1) {
    throw PreconditionError("TabularMdp::Next on a stochastic transition");
  }
  return row[0].next;
}

std::vector<StateId> TabularMdp::NonAbsorbingStates() const {
  std::vector<StateId> out;
  for (StateId x = 0; x < num_states_; ++x) {
    if (!is_absorbing_[x]) out.push_back(x);
  }
  return out;
}

TabularMdp TabularMdp::WithCosts(std::vector<double> costs) const {
  return TabularMdp(num_states_, num_actions_, valid_, outcomes_, std::move(costs),
                    discount_, absorbing_);
}

TabularMdp TabularMdp::WithDiscount(double discount) const {
  return TabularMdp(num_states_, num_actions_, valid_, outcomes_, costs_, discount,
                    absorbing_);
}

}  // namespace encsynth::mdp
