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

#include "encsynth/re_rl/path_integral.h"

#include <cmath>
#include <string>

#include "encsynth/common/error.h"

namespace encsynth::re {

PathIntegralStats PathIntegralEstimateWithError(std::span<const mdp::Episode> episodes,
                                                double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("PathIntegralEstimate: lambda must be positive");
  if (episodes.empty()) throw InvalidArgument("PathIntegralEstimate: no episodes");
  const mdp::StateId start = episodes.front().start;
  // Welford keeps the variance accurate for large N.
  double mean = 0.0;
  double m2 = 0.0;
  int n = 0;
  for (const mdp::Episode& e : episodes) {
    if (e.outcome != mdp::EpisodeOutcome::kAbsorbed) {
      throw InvalidArgument("PathIntegralEstimate: episode " + std::to_string(n) +
                            " was truncated; the estimator needs absorbed paths");
    }
    if (e.start != start) {
      throw InvalidArgument("PathIntegralEstimate: episodes do not share a start state");
    }
    double g = 0.0;
    for (const mdp::Step& s : e.steps) g += s.cost;
    const double term = std::exp(-g / lambda);
    ++n;
    const double delta = term - mean;
    mean += delta / n;
    m2 += delta * (term - mean);
  }
  PathIntegralStats stats;
  stats.estimate = mean;
  stats.count = n;
  stats.standard_error = n > 1 ? std::sqrt(m2 / (n - 1) / n) : 0.0;
  return stats;
}

double PathIntegralEstimate(std::span<const mdp::Episode> episodes, double lambda) {
  return PathIntegralEstimateWithError(episodes, lambda).estimate;
}

double PathIntegralValue(std::span<const mdp::Episode> episodes, double lambda) {
  return 0.0 - lambda * std::log(PathIntegralEstimate(episodes, lambda));
}

}  // namespace encsynth::re
