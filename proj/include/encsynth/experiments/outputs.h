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

#ifndef ENCSYNTH_EXPERIMENTS_OUTPUTS_H_
#define ENCSYNTH_EXPERIMENTS_OUTPUTS_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "encsynth/mdp/grid_world.h"
#include "encsynth/re_rl/problem.h"

namespace encsynth::experiments {

// mean_x |V*(x) - V(x)| / mean_x V*(x) over non-absorbing states. Throws
// DomainError when mean V* is not positive.
double NormalizedError(const mdp::TabularMdp& mdp, const re::ValueTable& v_star,
                       const re::ValueTable& v);

// Per-episode normalized errors, element k-1 after episode k.
using ErrorSeries = std::vector<double>;

// height x width grid of V = -lambda ln Z; traps are NaN and the goal is 0.
std::string ValueGridCsv(const mdp::GridWorld& world, const re::DesirabilityTable& z,
                         double lambda);
std::string ValueGridCsv(const mdp::GridWorld& world, const re::ValueTable& v);

// `episode,normalized_error` rows, episodes from 1.
std::string ErrorSeriesCsv(const ErrorSeries& series);
ErrorSeries ParseErrorSeriesCsv(const std::string& text);

// Writes value_k<k>.csv for every snapshot.
void EmitValueSnapshots(const std::filesystem::path& dir, const mdp::GridWorld& world,
                        const std::map<int, re::DesirabilityTable>& snapshots, double lambda);

// Shortest round-trip decimal form; identical inputs give identical text.
std::string FormatDouble(double v);

void WriteFile(const std::filesystem::path& path, const std::string& text);
std::string ReadFile(const std::filesystem::path& path);

}  // namespace encsynth::experiments

#endif  // ENCSYNTH_EXPERIMENTS_OUTPUTS_H_
