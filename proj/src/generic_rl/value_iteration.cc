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

#include "encsynth/generic_rl/value_iteration.h"

#include <cmath>
#include <limits>
#include <string>

#include "encsynth/common/error.h"

namespace encsynth::rl {

double BackupTerm(const mdp::TabularMdp& mdp, const ValueTable& v, StateId x, ActionId u) {
  double expected = 0.0;
  for (const mdp::Outcome& o : mdp.Outcomes(x, u)) expected += o.prob * v[o.next];
  return mdp.Cost(x, u) + mdp.discount() * expected;
}

ValueTable BellmanBackup(const mdp::TabularMdp& mdp, const ValueTable& v) {
  ValueTable out{std::vector<double>(mdp.num_states(), 0.0)};
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    if (mdp.IsAbsorbing(x)) continue;
    double best = std::numeric_limits<double>::infinity();
    for (ActionId u : mdp.ValidActions(x)) best = std::min(best, BackupTerm(mdp, v, x, u));
    out[x] = best;
  }
  return out;
}

ValueIterationResult ValueIteration(const mdp::TabularMdp& mdp, double tol,
                                    int max_iterations) {
  ValueTable v{std::vector<double>(mdp.num_states(), 0.0)};
  for (int k = 0; k <= max_iterations; ++k) {
    ValueTable next = BellmanBackup(mdp, v);
    double residual = 0.0;
    for (std::size_t x = 0; x < v.size(); ++x) {
      residual = std::max(residual, std::abs(next.values[x] - v.values[x]));
    }
    if (!std::isfinite(residual)) break;
    if (residual <= tol) return {std::move(v), k, residual};
    v = std::move(next);
  }
  throw NonConvergence("value iteration did not reach tolerance within " +
                       std::to_string(max_iterations) + " iterations");
}

mdp::DeterministicPolicy GreedyPolicyFromValue(const mdp::TabularMdp& mdp,
                                               const ValueTable& v) {
  std::vector<ActionId> actions(mdp.num_states());
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    double best = std::numeric_limits<double>::infinity();
    for (ActionId u : mdp.ValidActions(x)) {
      const double term = BackupTerm(mdp, v, x, u);
      if (term < best) {
        best = term;
        actions[x] = u;
      }
    }
  }
  return mdp::DeterministicPolicy(mdp, std::move(actions));
}

QTable QFromValue(const mdp::TabularMdp& mdp, const ValueTable& v) {
  QTable q(mdp.num_states(), mdp.num_actions());
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    if (mdp.IsAbsorbing(x)) continue;
    for (ActionId u : mdp.ValidActions(x)) q(x, u) = BackupTerm(mdp, v, x, u);
  }
  return q;
}

}  // namespace encsynth::rl
