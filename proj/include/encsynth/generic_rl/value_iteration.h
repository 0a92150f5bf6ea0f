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

#ifndef ENCSYNTH_GENERIC_RL_VALUE_ITERATION_H_
#define ENCSYNTH_GENERIC_RL_VALUE_ITERATION_H_

#include "encsynth/generic_rl/tables.h"
#include "encsynth/mdp/policy.h"

namespace encsynth::rl {

// (TV)(x) = min_u [C(x,u) + gamma sum_x' P(x'|x,u) V(x')]; absorbing states 0.
ValueTable BellmanBackup(const mdp::TabularMdp& mdp, const ValueTable& v);

// The bracketed term of the backup for one pair (x, u).
double BackupTerm(const mdp::TabularMdp& mdp, const ValueTable& v, StateId x, ActionId u);

struct ValueIterationResult {
  ValueTable values;
  int iterations = 0;
  // ||T V - V||_inf of the returned V.
  double residual = 0.0;
};

// Repeats V <- TV from V = 0 and returns the first iterate whose Bellman
// residual is <= tol. Throws NonConvergence after `max_iterations`.
ValueIterationResult ValueIteration(const mdp::TabularMdp& mdp, double tol,
                                    int max_iterations = 100000);

// argmin_u of the backup term; ties go to the lowest action id.
mdp::DeterministicPolicy GreedyPolicyFromValue(const mdp::TabularMdp& mdp,
                                               const ValueTable& v);

// Q(x,u) = C(x,u) + gamma sum_x' P(x'|x,u) V(x').
QTable QFromValue(const mdp::TabularMdp& mdp, const ValueTable& v);

}  // namespace encsynth::rl

#endif  // ENCSYNTH_GENERIC_RL_VALUE_ITERATION_H_
