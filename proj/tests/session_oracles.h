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

#ifndef ENCSYNTH_TESTS_SESSION_ORACLES_H_
#define ENCSYNTH_TESTS_SESSION_ORACLES_H_

#include <algorithm>
#include <cstdint>
#include <vector>

#include "encsynth/re_rl/problem.h"
#include "encsynth/re_rl/z_learning.h"

namespace encsynth::testing {

struct RefreshPrediction {
  std::uint64_t rounds = 0;
  std::uint64_t ciphertexts = 0;
};

// Replays the client's episode stream and tracks ciphertext levels by hand:
// a fresh ciphertext sits at `fresh`, the cost factor leaves the exp
// approximation at fresh - exp_depth, and the update
//   rescale(mul_plain(f)), rescale(mul(., z_next)), rescale(mul_plain(z_x))
// needs f >= 2, z_next >= 1, z_x >= 1 (f >= 1 when the successor is
// absorbing) and leaves the entry at min(f - 2, z_next - 1, z_x - 1).
inline RefreshPrediction PredictRefreshes(const re::ReProblem& problem, int episodes,
                                          int max_steps, std::uint64_t seed, int fresh,
                                          int exp_depth) {
  const mdp::TabularMdp& mdp = problem.mdp();
  std::vector<int> level(mdp.num_states(), fresh);
  RefreshPrediction out;
  for (int k = 1; k <= episodes; ++k) {
    const mdp::Episode ep = re::SampleTrainingEpisode(problem, k, max_steps, seed);
    for (std::size_t t = 0; t < ep.steps.size(); ++t) {
      const int x = ep.steps[t].state;
      const int y = ep.NextState(t);
      const bool absorbing = mdp.IsAbsorbing(y);
      int f = fresh - exp_depth;
      std::uint64_t refreshed = 0;
      if (f < (absorbing ? 1 : 2)) {
        f = fresh;
        ++refreshed;
      }
      if (level[x] < 1) {
        level[x] = fresh;
        ++refreshed;
      }
      if (!absorbing && y != x && level[y] < 1) {
        level[y] = fresh;
        ++refreshed;
      }
      if (refreshed > 0) {
        ++out.rounds;
        out.ciphertexts += refreshed;
      }
      level[x] = absorbing ? std::min(f - 1, level[x] - 1)
                           : std::min({f - 2, level[y] - 1, level[x] - 1});
    }
  }
  return out;
}

}  // namespace encsynth::testing

#endif  // ENCSYNTH_TESTS_SESSION_ORACLES_H_
