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

#include "encsynth/re_rl/problem.h"

#include <cmath>
#include <string>

#include "encsynth/common/error.h"

namespace encsynth::re {

ReProblem::ReProblem(mdp::TabularMdp mdp, mdp::StochasticPolicy behavior, double lambda)
    : mdp_(std::move(mdp)), behavior_(std::move(behavior)), lambda_(lambda) {
  if (!(lambda_ > 0.0)) throw InvalidArgument("ReProblem: lambda must be positive");
  if (!mdp_.deterministic()) throw InvalidArgument("ReProblem: transitions must be deterministic");
  if (!mdp_.undiscounted()) throw InvalidArgument("ReProblem: the problem must be undiscounted");
  if (behavior_.num_states() != mdp_.num_states() ||
      behavior_.num_actions() != mdp_.num_actions()) {
    throw InvalidArgument("ReProblem: behavior policy shape mismatch");
  }
  for (StateId x = 0; x < mdp_.num_states(); ++x) {
    for (ActionId u : mdp_.ValidActions(x)) {
      if (!(behavior_.Prob(x, u) > 0.0)) {
        throw InvalidArgument("ReProblem: behavior policy must be positive on valid action " +
                              std::to_string(u) + " of state " + std::to_string(x));
      }
    }
  }
}

DesirabilityTable::DesirabilityTable(const mdp::TabularMdp& mdp, std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(mdp.num_states())) {
    throw InvalidArgument("DesirabilityTable: size mismatch");
  }
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    if (mdp.IsAbsorbing(x)) {
      values_[x] = 1.0;
    } else if (!(values_[x] > 0.0) || !std::isfinite(values_[x])) {
      throw DomainError("DesirabilityTable: entry " + std::to_string(x) +
                        " is not a positive finite number");
    }
  }
}

DesirabilityTable DesirabilityTable::Ones(const mdp::TabularMdp& mdp) {
  DesirabilityTable z;
  z.values_.assign(mdp.num_states(), 1.0);
  return z;
}

ValueTable DesirabilityToValue(const DesirabilityTable& z, double lambda) {
  ValueTable v{std::vector<double>(z.size())};
  for (std::size_t x = 0; x < z.size(); ++x) {
    if (!(z.values()[x] > 0.0)) {
      throw DomainError("DesirabilityToValue: nonpositive desirability at state " +
                        std::to_string(x));
    }
    v.values[x] = 0.0 - lambda * std::log(z.values()[x]);
  }
  return v;
}

DesirabilityTable ValueToDesirability(const mdp::TabularMdp& mdp, const ValueTable& v,
                                      double lambda) {
  std::vector<double> z(v.size());
  for (std::size_t x = 0; x < v.size(); ++x) z[x] = std::exp(-v.values[x] / lambda);
  return DesirabilityTable(mdp, std::move(z));
}

}  // namespace encsynth::re
