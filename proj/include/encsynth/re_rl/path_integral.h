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

#ifndef ENCSYNTH_RE_RL_PATH_INTEGRAL_H_
#define ENCSYNTH_RE_RL_PATH_INTEGRAL_H_

#include <span>

#include "encsynth/mdp/episode.h"

namespace encsynth::re {

struct PathIntegralStats {
  double estimate = 0.0;
  // Sample standard error of the mean; 0 for a single episode.
  double standard_error = 0.0;
  int count = 0;
};

// (1/N) sum_i exp(-G_i/lambda) over absorbed episodes sharing a start state,
// G_i the undiscounted cost of episode i. Truncated episodes, mixed start
// states and an empty list throw InvalidArgument.
double PathIntegralEstimate(std::span<const mdp::Episode> episodes, double lambda);
PathIntegralStats PathIntegralEstimateWithError(std::span<const mdp::Episode> episodes,
                                                double lambda);

// -lambda ln PathIntegralEstimate.
double PathIntegralValue(std::span<const mdp::Episode> episodes, double lambda);

}  // namespace encsynth::re

#endif  // ENCSYNTH_RE_RL_PATH_INTEGRAL_H_
