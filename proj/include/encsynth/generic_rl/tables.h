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

#ifndef ENCSYNTH_GENERIC_RL_TABLES_H_
#define ENCSYNTH_GENERIC_RL_TABLES_H_

#include <string>
#include <vector>

#include "encsynth/mdp/tabular_mdp.h"

namespace encsynth::rl {

using mdp::ActionId;
using mdp::StateId;

// V[x] per state; zero on absorbing states.
struct ValueTable {
  std::vector<double> values;

  double operator[](StateId x) const { return values[x]; }
  double& operator[](StateId x) { return values[x]; }
  std::size_t size() const { return values.size(); }
};

// Q[x][u]; entries of invalid actions are kept at zero and never read.
class QTable {
 public:
  QTable(int num_states, int num_actions)
      : num_actions_(num_actions),
        values_(static_cast<std::size_t>(num_states) * num_actions, 0.0) {}

  double operator()(StateId x, ActionId u) const { return values_[Index(x, u)]; }
  double& operator()(StateId x, ActionId u) { return values_[Index(x, u)]; }
  int num_states() const { return static_cast<int>(values_.size() / num_actions_); }
  int num_actions() const { return num_actions_; }
  bool operator==(const QTable&) const = default;

 private:
  std::size_t Index(StateId x, ActionId u) const {
    return static_cast<std::size_t>(x) * num_actions_ + u;
  }
  int num_actions_;
  std::vector<double> values_;
};

// `state,value` rows.
std::string ValueTableToCsv(const ValueTable& v);
// `state,action,value` rows over valid actions.
std::string QTableToCsv(const QTable& q, const mdp::TabularMdp& mdp);

// max over valid (x, u) of |a - b|.
double QMaxAbsDiff(const QTable& a, const QTable& b, const mdp::TabularMdp& mdp);

}  // namespace encsynth::rl

#endif  // ENCSYNTH_GENERIC_RL_TABLES_H_
