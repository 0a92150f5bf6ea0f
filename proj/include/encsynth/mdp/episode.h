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

#ifndef ENCSYNTH_MDP_EPISODE_H_
#define ENCSYNTH_MDP_EPISODE_H_

#include <string>
#include <vector>

#include "encsynth/common/rng.h"
#include "encsynth/mdp/policy.h"
#include "encsynth/mdp/tabular_mdp.h"

namespace encsynth::mdp {

struct Step {
  StateId state;
  ActionId action;
  double cost;

  bool operator==(const Step&) const = default;
};

enum class EpisodeOutcome { kAbsorbed, kTruncated };

struct Episode {
  StateId start = 0;
  std::vector<Step> steps;
  // State reached after the last step (x_{T_f} when absorbed).
  StateId final_state = 0;
  EpisodeOutcome outcome = EpisodeOutcome::kTruncated;

  int length() const { return static_cast<int>(steps.size()); }
  // Successor of step t.
  StateId NextState(std::size_t t) const {
    return t + 1 < steps.size() ? steps[t + 1].state : final_state;
  }
  bool operator==(const Episode&) const = default;
};

// Samples u ~ policy(.|x), then x' ~ P(.|x, u), until an absorbing state is
// entered or `max_steps` steps were taken. Throws PreconditionError when x0 is
// absorbing.
Episode SimulateEpisode(const TabularMdp& mdp, const StochasticPolicy& policy, StateId x0,
                        int max_steps, Rng& rng);

// Samples x' ~ P(.|x, u).
StateId SampleNext(const TabularMdp& mdp, StateId x, ActionId u, Rng& rng);

// sum_t gamma^t c_t over the episode's steps.
double DiscountedReturn(const Episode& episode, double gamma);

// CSV with header `t,state,action,cost`; costs printed with 17 significant
// digits so the text is an exact image of the episode.
std::string EpisodeToCsv(const Episode& episode);

}  // namespace encsynth::mdp

#endif  // ENCSYNTH_MDP_EPISODE_H_
