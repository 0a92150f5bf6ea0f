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

#ifndef ENCSYNTH_RE_RL_PROBLEM_H_
#define ENCSYNTH_RE_RL_PROBLEM_H_

#include <vector>

#include "encsynth/generic_rl/tables.h"
#include "encsynth/mdp/policy.h"
#include "encsynth/mdp/tabular_mdp.h"

namespace encsynth::re {

using mdp::ActionId;
using mdp::StateId;
using rl::ValueTable;

// Relative-entropy regularized first-exit problem: deterministic transitions,
// no discounting, at least one absorbing state, behavior policy b strictly
// positive on every valid action, lambda > 0.
class ReProblem {
 public:
  ReProblem(mdp::TabularMdp mdp, mdp::StochasticPolicy behavior, double lambda);

  const mdp::TabularMdp& mdp() const { return mdp_; }
  const mdp::StochasticPolicy& behavior() const { return behavior_; }
  double lambda() const { return lambda_; }

 private:
  mdp::TabularMdp mdp_;
  mdp::StochasticPolicy behavior_;
  double lambda_;
};

// Z[x] = exp(-V(x)/lambda) over all states, Z = 1 on absorbing states.
class DesirabilityTable {
 public:
  // Absorbing entries are set to 1; every other entry must be > 0.
  DesirabilityTable(const mdp::TabularMdp& mdp, std::vector<double> values);
  // Z = 1 everywhere (V = 0).
  static DesirabilityTable Ones(const mdp::TabularMdp& mdp);

  double operator[](StateId x) const { return values_[x]; }
  // Writes an entry of a non-absorbing state. The caller keeps it positive;
  // the learners in this module preserve positivity for alpha in [0, 1].
  void Set(StateId x, double z) { values_[x] = z; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool operator==(const DesirabilityTable&) const = default;

 private:
  DesirabilityTable() = default;
  std::vector<double> values_;
};

// V = -lambda ln Z; throws DomainError on nonpositive entries.
ValueTable DesirabilityToValue(const DesirabilityTable& z, double lambda);
DesirabilityTable ValueToDesirability(const mdp::TabularMdp& mdp, const ValueTable& v,
                                      double lambda);

}  // namespace encsynth::re

#endif  // ENCSYNTH_RE_RL_PROBLEM_H_
