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

#include "encsynth/experiments/outputs.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "encsynth/common/error.h"

namespace encsynth::experiments {

double NormalizedError(const mdp::TabularMdp& mdp, const re::ValueTable& v_star,
                       const re::ValueTable& v) {
  if (v_star.size() != v.size() || v.size() != static_cast<std::size_t>(mdp.num_states())) {
    throw InvalidArgument("NormalizedError: value tables do not match the state set");
  }
  double diff = 0.0;
  double mass = 0.0;
  int n = 0;
  for (mdp::StateId x = 0; x < mdp.num_states(); ++x) {
    if (mdp.IsAbsorbing(x)) continue;
    diff += std::abs(v_star[x] - v[x]);
    mass += v_star[x];
    ++n;
  }
  if (n == 0 || !(mass > 0.0)) throw DomainError("NormalizedError: mean of V* is not positive");
  return diff / mass;
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "NaN";
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string ValueGridCsv(const mdp::GridWorld& world, const re::ValueTable& v) {
  std::string out;
  for (int r = 0; r < world.cells.height(); ++r) {
    for (int c = 0; c < world.cells.width(); ++c) {
      if (c > 0) out += ',';
      const mdp::StateId x = world.cells.StateOf({r, c});
      if (x < 0) {
        out += "NaN";
      } else if (x == world.goal_state) {
        out += '0';
      } else {
        out += FormatDouble(v[x]);
      }
    }
    out += '\n';
  }
  return out;
}

std::string ValueGridCsv(const mdp::GridWorld& world, const re::DesirabilityTable& z,
                         double lambda) {
  return ValueGridCsv(world, re::DesirabilityToValue(z, lambda));
}

std::string ErrorSeriesCsv(const ErrorSeries& series) {
  std::string out = "episode,normalized_error\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    out += std::to_string(k + 1) + ',' + FormatDouble(series[k]) + '\n';
  }
  return out;
}

ErrorSeries ParseErrorSeriesCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "episode,normalized_error") {
    throw IoError("error series: missing header");
  }
  ErrorSeries out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("error series: bad row '" + line + "'");
    try {
      if (std::stoul(line.substr(0, comma)) != out.size() + 1) {
        throw IoError("error series: episodes out of order");
      }
      out.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw IoError("error series: bad row '" + line + "'");
    }
  }
  return out;
}

void EmitValueSnapshots(const std::filesystem::path& dir, const mdp::GridWorld& world,
                        const std::map<int, re::DesirabilityTable>& snapshots, double lambda) {
  for (const auto& [k, z] : snapshots) {
    WriteFile(dir / ("value_k" + std::to_string(k) + ".csv"), ValueGridCsv(world, z, lambda));
  }
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace encsynth::experiments
