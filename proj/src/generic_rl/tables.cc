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

#include "encsynth/generic_rl/tables.h"

#include <cmath>
#include <cstdio>

namespace encsynth::rl {

std::string ValueTableToCsv(const ValueTable& v) {
  std::string out = "state,value\n";
  char buf[64];
  for (std::size_t x = 0; x < v.size(); ++x) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", x, v.values[x]);
    out += buf;
  }
  return out;
}

std::string QTableToCsv(const QTable& q, const mdp::TabularMdp& mdp) {
  std::string out = "state,action,value\n";
  char buf[80];
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    for (ActionId u : mdp.ValidActions(x)) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g\n", x, u, q(x, u));
      out += buf;
    }
  }
  return out;
}

double QMaxAbsDiff(const QTable& a, const QTable& b, const mdp::TabularMdp& mdp) {
  double worst = 0.0;
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    for (ActionId u : mdp.ValidActions(x)) {
      worst = std::max(worst, std::abs(a(x, u) - b(x, u)));
    }
  }
  return worst;
}

}  // namespace encsynth::rl
