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

#ifndef ENCSYNTH_RE_RL_POLICY_H_
#define ENCSYNTH_RE_RL_POLICY_H_

#include <string>
#include <vector>

#include "encsynth/mdp/policy.h"
#include "encsynth/re_rl/problem.h"

namespace encsynth::re {

// rho(x, u) = C(x, u) + V(F(x, u)); entries of invalid actions are NaN.
struct RhoTable {
  int num_actions = 0;
  std::vector<double> values;
  double operator()(StateId x, ActionId u) const {
    return values[static_cast<std::size_t>(x) * num_actions + u];
  }
};

RhoTable ComputeRho(const ReProblem& problem, const ValueTable& v);

// pi(u|x) proportional to b(u|x) e^{-C(x,u)/lambda} Z(F(x,u)). Absorbing
// states keep their behavior row. Throws DomainError when a row underflows
// to zero.
mdp::StochasticPolicy BoltzmannPolicy(const ReProblem& problem, const DesirabilityTable& z);

// Evaluates V(x) = sum_u pi(u|x) [C(x,u) + lambda ln(pi(u|x)/b(u|x)) + V(F(x,u))]
// with V = 0 on absorbing states, by a direct linear solve. Throws
// InvalidArgument when pi puts mass where b has none, and PreconditionError
// when some state cannot reach an absorbing state inside the support of pi.
ValueTable KlPolicyValueExact(const ReProblem& problem, const mdp::StochasticPolicy& pi);

// `state,value` rows, same schema as the value tables.
std::string DesirabilityToCsv(const DesirabilityTable& z);

}  // namespace encsynth::re

#endif  // ENCSYNTH_RE_RL_POLICY_H_
