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

#include "encsynth/mdp/episode.h"

#include <cstdio>

#include "encsynth/common/error.h"

namespace encsynth::mdp {

StateId SampleNext(const TabularMdp& mdp, StateId x, ActionId u, Rng& rng) {
  const auto outcomes = mdp.Outcomes(x, u);
  if (outcomes.size() == 1) return outcomes[0].next;
  const double r = UniformUnit(rng);
  double acc = 0.0;
  for (const Outcome& o : outcomes) {
    acc += o.prob;
    if (r < acc) return o.next;
  }
  return outcomes.back().next;
}

Episode SimulateEpisode(const TabularMdp& mdp, const StochasticPolicy& policy, StateId x0,
                        int max_steps, Rng& rng) {
  if (x0 < 0 || x0 >= mdp.num_states()) {
    throw PreconditionError("SimulateEpisode: start state out of range");
  }
  if (mdp.IsAbsorbing(x0)) {
    throw PreconditionError("SimulateEpisode: start state is absorbing");
  }
  Episode ep;
  ep.start = x0;
  StateId x = x0;
  for (int t = 0; t < max_steps; ++t) {
    const ActionId u = policy.Sample(x, rng);
    const StateId next = SampleNext(mdp, x, u, rng);
    ep.steps.push_back(Step{x, u, mdp.Cost(x, u)});
    x = next;
    if (mdp.IsAbsorbing(x)) {
      ep.outcome = EpisodeOutcome::kAbsorbed;
      break;
    }
  }
  ep.final_state = x;
  return ep;
}

double DiscountedReturn(const Episode& episode, double gamma) {
  double total = 0.0;
  double weight = 1.0;
  for (const Step& s : episode.steps) {
    total += weight * s.cost;
    weight *= gamma;
  }
  return total;
}

std::string EpisodeToCsv(const Episode& episode) {
  std::string out = "t,state,action,cost\n";
  char buf[96];
  for (std::size_t t = 0; t < episode.steps.size(); ++t) {
    const Step& s = episode.steps[t];
    std::snprintf(buf, sizeof(buf), "%zu,%d,%d,%.17g\n", t, s.state, s.action, s.cost);
    out += buf;
  }
  return out;
}

}  // namespace encsynth::mdp
