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

#include "encsynth/mdp/grid_world.h"

#include <deque>
#include <fstream>
#include <sstream>

namespace encsynth::mdp {

const char* GridActionName(ActionId u) {
  static constexpr const char* kNames[kNumGridActions] = {"N",  "NE", "E",  "SE", "S",
                                                          "SW", "W",  "NW", "Stay"};
  return (u >= 0 && u < kNumGridActions) ? kNames[u] : "?";
}

CellMap::CellMap(int width, int height, const std::set<Cell>& traps)
    : width_(width), height_(height), ids_(static_cast<std::size_t>(width) * height, -1) {
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      if (traps.count({r, c})) continue;
      ids_[r * width + c] = static_cast<StateId>(cells_.size());
      cells_.push_back({r, c});
    }
  }
}

namespace {

void ValidateSpec(const GridWorldSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0) {
    throw InvalidArgument("grid world: width and height must be positive");
  }
  auto in_bounds = [&](Cell c) {
    return c.first >= 0 && c.first < spec.height && c.second >= 0 && c.second < spec.width;
  };
  if (!in_bounds(spec.goal)) throw InvalidArgument("grid world: goal out of bounds");
  if (spec.traps.count(spec.goal)) throw InvalidArgument("grid world: goal is a trap");
  for (const Cell& t : spec.traps) {
    if (!in_bounds(t)) throw InvalidArgument("grid world: trap out of bounds");
  }
  if (!(spec.step_cost > 0.0)) {
    throw InvalidArgument("grid world: step_cost must be positive");
  }
}

}  // namespace

GridWorld BuildGridWorld(const GridWorldSpec& spec, double discount) {
  ValidateSpec(spec);
  CellMap cells(spec.width, spec.height, spec.traps);
  const int n = cells.num_states();
  const StateId goal = cells.StateOf(spec.goal);

  std::vector<std::vector<ActionId>> valid(n);
  std::vector<StateId> next(static_cast<std::size_t>(n) * kNumGridActions);
  std::vector<double> costs(next.size(), 0.0);
  for (StateId x = 0; x < n; ++x) {
    for (ActionId u = 0; u < kNumGridActions; ++u) next[x * kNumGridActions + u] = x;
    if (x == goal) {
      valid[x] = {kStay};
      continue;
    }
    const Cell c = cells.CellOf(x);
    for (ActionId u = 0; u < kNumGridActions; ++u) {
      const Cell d{c.first + kGridMoves[u].first, c.second + kGridMoves[u].second};
      if (!cells.InBounds(d) || cells.IsTrap(d)) continue;
      valid[x].push_back(u);
      next[x * kNumGridActions + u] = cells.StateOf(d);
      costs[x * kNumGridActions + u] = spec.step_cost;
    }
  }

  // Backward BFS from the goal over valid moves.
  std::vector<std::vector<StateId>> preds(n);
  for (StateId x = 0; x < n; ++x) {
    for (ActionId u : valid[x]) {
      const StateId y = next[x * kNumGridActions + u];
      if (y != x) preds[y].push_back(x);
    }
  }
  std::vector<bool> seen(n, false);
  std::deque<StateId> queue{goal};
  seen[goal] = true;
  while (!queue.empty()) {
    const StateId y = queue.front();
    queue.pop_front();
    for (StateId x : preds[y]) {
      if (!seen[x]) {
        seen[x] = true;
        queue.push_back(x);
      }
    }
  }
  std::vector<Cell> unreachable;
  for (StateId x = 0; x < n; ++x) {
    if (!seen[x]) unreachable.push_back(cells.CellOf(x));
  }
  if (!unreachable.empty()) {
    std::ostringstream msg;
    msg << "grid world: goal unreachable from cells";
    for (const Cell& c : unreachable) msg << " (" << c.first << "," << c.second << ")";
    throw UnreachableCells(msg.str(), std::move(unreachable));
  }

  TabularMdp mdp = TabularMdp::Deterministic(n, kNumGridActions, std::move(valid), next,
                                             std::move(costs), discount, {goal});
  return GridWorld{spec, std::move(cells), std::move(mdp), goal};
}

GridWorldSpec ParseMaze(const std::string& text, double step_cost) {
  std::istringstream in(text);
  GridWorldSpec spec;
  spec.step_cost = step_cost;
  if (!(in >> spec.width >> spec.height) || spec.width <= 0 || spec.height <= 0) {
    throw InvalidArgument("maze: first line must be `width height`");
  }
  std::string line;
  std::getline(in, line);
  bool have_goal = false;
  for (int r = 0; r < spec.height; ++r) {
    if (!std::getline(in, line)) {
      throw InvalidArgument("maze: expected " + std::to_string(spec.height) + " rows");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int>(line.size()) != spec.width) {
      throw InvalidArgument("maze: row " + std::to_string(r) + " has width " +
                            std::to_string(line.size()));
    }
    for (int c = 0; c < spec.width; ++c) {
      switch (line[c]) {
        case '.':
          break;
        case 'T':
          spec.traps.insert({r, c});
          break;
        case 'G':
          if (have_goal) throw InvalidArgument("maze: more than one goal");
          spec.goal = {r, c};
          have_goal = true;
          break;
        default:
          throw InvalidArgument(std::string("maze: unexpected character '") + line[c] + "'");
      }
    }
  }
  if (!have_goal) throw InvalidArgument("maze: no goal cell");
  return spec;
}

GridWorldSpec LoadMaze(const std::string& path, double step_cost) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open maze file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseMaze(buf.str(), step_cost);
}

std::string FormatMaze(const GridWorldSpec& spec) {
  std::string out = std::to_string(spec.width) + " " + std::to_string(spec.height) + "\n";
  for (int r = 0; r < spec.height; ++r) {
    for (int c = 0; c < spec.width; ++c) {
      if (spec.goal == Cell{r, c}) {
        out += 'G';
      } else if (spec.traps.count({r, c})) {
        out += 'T';
      } else {
        out += '.';
      }
    }
    out += '\n';
  }
  return out;
}

std::vector<int> GoalDistances(const GridWorld& world) {
  const TabularMdp& mdp = world.mdp;
  std::vector<std::vector<StateId>> preds(mdp.num_states());
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    for (ActionId u : mdp.ValidActions(x)) {
      const StateId y = mdp.Next(x, u);
      if (y != x) preds[y].push_back(x);
    }
  }
  std::vector<int> dist(mdp.num_states(), -1);
  std::deque<StateId> queue{world.goal_state};
  dist[world.goal_state] = 0;
  while (!queue.empty()) {
    const StateId y = queue.front();
    queue.pop_front();
    for (StateId x : preds[y]) {
      if (dist[x] < 0) {
        dist[x] = dist[y] + 1;
        queue.push_back(x);
      }
    }
  }
  return dist;
}

}  // namespace encsynth::mdp
