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

#ifndef ENCSYNTH_MDP_GRID_WORLD_H_
#define ENCSYNTH_MDP_GRID_WORLD_H_

#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "encsynth/common/error.h"
#include "encsynth/mdp/tabular_mdp.h"

namespace encsynth::mdp {

// (row, col), row 0 at the top.
using Cell = std::pair<int, int>;

// Grid moves. Ids are stable: they index every action table built from a
// grid world, and the argmin tie-break prefers lower ids.
enum GridAction : ActionId {
  kNorth = 0,
  kNorthEast = 1,
  kEast = 2,
  kSouthEast = 3,
  kSouth = 4,
  kSouthWest = 5,
  kWest = 6,
  kNorthWest = 7,
  kStay = 8,
};
inline constexpr int kNumGridActions = 9;

// (d_row, d_col) for each GridAction.
inline constexpr std::array<std::pair<int, int>, kNumGridActions> kGridMoves = {{
    {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {0, 0},
}};

const char* GridActionName(ActionId u);

struct GridWorldSpec {
  int width = 0;
  int height = 0;
  std::set<Cell> traps;
  Cell goal{0, 0};
  double step_cost = 0.1;
};

// Thrown when some free cell cannot reach the goal.
class UnreachableCells : public InvalidArgument {
 public:
  UnreachableCells(const std::string& what, std::vector<Cell> cells)
      : InvalidArgument(what), cells_(std::move(cells)) {}
  const std::vector<Cell>& cells() const { return cells_; }

 private:
  std::vector<Cell> cells_;
};

// Cell <-> state id mapping. State ids enumerate the non-trap cells in
// row-major order.
class CellMap {
 public:
  CellMap(int width, int height, const std::set<Cell>& traps);

  int width() const { return width_; }
  int height() const { return height_; }
  int num_states() const { return static_cast<int>(cells_.size()); }
  Cell CellOf(StateId x) const { return cells_[x]; }
  // -1 for traps.
  StateId StateOf(Cell c) const { return ids_[c.first * width_ + c.second]; }
  bool InBounds(Cell c) const {
    return c.first >= 0 && c.first < height_ && c.second >= 0 && c.second < width_;
  }
  bool IsTrap(Cell c) const { return StateOf(c) < 0; }

 private:
  int width_;
  int height_;
  std::vector<Cell> cells_;
  std::vector<StateId> ids_;
};

struct GridWorld {
  GridWorldSpec spec;
  CellMap cells;
  TabularMdp mdp;
  StateId goal_state;
};

// One state per non-trap cell; the goal is the unique absorbing state (only
// Stay, zero cost). Moves that leave the grid or enter a trap are not valid
// actions. `discount` defaults to the undiscounted setting.
GridWorld BuildGridWorld(const GridWorldSpec& spec, double discount = 1.0);

// Text maze: first line `width height`, then `height` rows of `width`
// characters from {'.', 'T', 'G'}.
GridWorldSpec ParseMaze(const std::string& text, double step_cost);
GridWorldSpec LoadMaze(const std::string& path, double step_cost);
std::string FormatMaze(const GridWorldSpec& spec);

// Shortest number of moves from each state to the goal (BFS over valid moves).
std::vector<int> GoalDistances(const GridWorld& world);

}  // namespace encsynth::mdp

#endif  // ENCSYNTH_MDP_GRID_WORLD_H_
