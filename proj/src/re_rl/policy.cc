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

#include "encsynth/re_rl/policy.h"

#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>

#include "encsynth/common/error.h"
#include "encsynth/re_rl/linear_system.h"

namespace encsynth::re {

RhoTable ComputeRho(const ReProblem& problem, const ValueTable& v) {
  const mdp::TabularMdp& mdp = problem.mdp();
  if (static_cast<int>(v.size()) != mdp.num_states()) {
    throw InvalidArgument("ComputeRho: value table has the wrong size");
  }
  RhoTable rho{mdp.num_actions(),
               std::vector<double>(std::size_t(mdp.num_states()) * mdp.num_actions(),
                                   std::numeric_limits<double>::quiet_NaN())};
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    for (ActionId u : mdp.ValidActions(x)) {
      rho.values[std::size_t(x) * mdp.num_actions() + u] = mdp.Cost(x, u) + v[mdp.Next(x, u)];
    }
  }
  return rho;
}

mdp::StochasticPolicy BoltzmannPolicy(const ReProblem& problem, const DesirabilityTable& z) {
  const mdp::TabularMdp& mdp = problem.mdp();
  if (static_cast<int>(z.size()) != mdp.num_states()) {
    throw InvalidArgument("BoltzmannPolicy: desirability table has the wrong size");
  }
  const int na = mdp.num_actions();
  std::vector<double> probs(std::size_t(mdp.num_states()) * na, 0.0);
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    double* row = &probs[std::size_t(x) * na];
    if (mdp.IsAbsorbing(x)) {
      for (ActionId u : mdp.ValidActions(x)) row[u] = problem.behavior().Prob(x, u);
      continue;
    }
    double total = 0.0;
    for (ActionId u : mdp.ValidActions(x)) {
      row[u] = problem.behavior().Prob(x, u) * std::exp(-mdp.Cost(x, u) / problem.lambda()) *
               z[mdp.Next(x, u)];
      total += row[u];
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
      throw DomainError("BoltzmannPolicy: all weights of state " + std::to_string(x) +
                        " underflowed; increase lambda or rescale the costs");
    }
    for (ActionId u : mdp.ValidActions(x)) row[u] /= total;
  }
  return mdp::StochasticPolicy(mdp, std::move(probs));
}

ValueTable KlPolicyValueExact(const ReProblem& problem, const mdp::StochasticPolicy& pi) {
  const mdp::TabularMdp& mdp = problem.mdp();
  const mdp::StochasticPolicy& b = problem.behavior();
  const int ns = mdp.num_states();
  for (StateId x = 0; x < ns; ++x) {
    for (ActionId u = 0; u < mdp.num_actions(); ++u) {
      const bool valid = mdp.IsValid(x, u);
      if (pi.Prob(x, u) > 0.0 && (!valid || !(b.Prob(x, u) > 0.0))) {
        throw InvalidArgument("KlPolicyValueExact: pi puts mass on action " + std::to_string(u) +
                              " of state " + std::to_string(x) + " where b has none");
      }
    }
  }

  // Backward reachability of the absorbing set in the support graph of pi.
  std::vector<std::vector<StateId>> preds(ns);
  for (StateId x = 0; x < ns; ++x) {
    if (mdp.IsAbsorbing(x)) continue;
    for (ActionId u : mdp.ValidActions(x)) {
      if (pi.Prob(x, u) > 0.0) preds[mdp.Next(x, u)].push_back(x);
    }
  }
  std::vector<bool> reaches(ns, false);
  std::deque<StateId> frontier;
  for (StateId x : mdp.absorbing()) {
    reaches[x] = true;
    frontier.push_back(x);
  }
  while (!frontier.empty()) {
    const StateId y = frontier.front();
    frontier.pop_front();
    for (StateId x : preds[y]) {
      if (!reaches[x]) {
        reaches[x] = true;
        frontier.push_back(x);
      }
    }
  }
  for (StateId x = 0; x < ns; ++x) {
    if (!reaches[x]) {
      throw PreconditionError("KlPolicyValueExact: state " + std::to_string(x) +
                              " cannot reach absorption under pi");
    }
  }

  std::vector<int> index(ns, -1);
  std::vector<StateId> states;
  for (StateId x = 0; x < ns; ++x) {
    if (!mdp.IsAbsorbing(x)) {
      index[x] = static_cast<int>(states.size());
      states.push_back(x);
    }
  }
  const int n = static_cast<int>(states.size());
  DenseMatrix m(n, n);
  std::vector<double> rhs(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const StateId x = states[i];
    m(i, i) += 1.0;
    for (ActionId u : mdp.ValidActions(x)) {
      const double p = pi.Prob(x, u);
      if (p == 0.0) continue;
      rhs[i] += p * (mdp.Cost(x, u) + problem.lambda() * std::log(p / b.Prob(x, u)));
      const StateId next = mdp.Next(x, u);
      if (!mdp.IsAbsorbing(next)) m(i, index[next]) -= p;
    }
  }
  const std::vector<double> v = SolveDense(std::move(m), std::move(rhs));
  ValueTable out{std::vector<double>(ns, 0.0)};
  for (int i = 0; i < n; ++i) out[states[i]] = v[i];
  return out;
}

std::string DesirabilityToCsv(const DesirabilityTable& z) {
  std::string out = "state,value\n";
  char buf[64];
  for (std::size_t x = 0; x < z.size(); ++x) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", x, z.values()[x]);
    out += buf;
  }
  return out;
}

}  // namespace encsynth::re
