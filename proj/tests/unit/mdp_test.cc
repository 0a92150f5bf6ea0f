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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "encsynth/common/bytes.h"
#include "encsynth/common/error.h"
#include "encsynth/mdp/episode.h"
#include "encsynth/mdp/grid_world.h"
#include "encsynth/mdp/policy.h"
#include "test_util.h"

namespace encsynth::mdp {
namespace {

std::vector<ActionId> Actions(const TabularMdp& mdp, StateId x) {
  auto span = mdp.ValidActions(x);
  return {span.begin(), span.end()};
}

TEST(GridWorldTest, OpenNineByNineHasEightyOneStates) {
  GridWorld w = BuildGridWorld({9, 9, {}, {4, 4}, 0.1});
  EXPECT_EQ(w.mdp.num_states(), 81);
  EXPECT_TRUE(w.mdp.IsAbsorbing(w.goal_state));
  EXPECT_EQ(w.mdp.absorbing().size(), 1u);
  EXPECT_EQ(w.mdp.ValidActions(w.cells.StateOf({2, 2})).size(), 9u);
}

TEST(GridWorldTest, SingleCellIsAbsorbingWithStayOnly) {
  GridWorld w = BuildGridWorld({1, 1, {}, {0, 0}, 0.1});
  ASSERT_EQ(w.mdp.num_states(), 1);
  EXPECT_TRUE(w.mdp.IsAbsorbing(0));
  EXPECT_EQ(Actions(w.mdp, 0), std::vector<ActionId>{kStay});
  EXPECT_EQ(w.mdp.Cost(0, kStay), 0.0);
}

TEST(GridWorldTest, TrapBlocksDiagonalFromCorner) {
  GridWorld w = BuildGridWorld({3, 3, {{1, 1}}, {2, 2}, 0.1});
  EXPECT_EQ(w.mdp.num_states(), 8);
  const StateId corner = w.cells.StateOf({0, 0});
  EXPECT_EQ(Actions(w.mdp, corner), (std::vector<ActionId>{kEast, kSouth, kStay}));
  const StochasticPolicy b = UniformBehavior(w.mdp);
  for (ActionId u : {kEast, kSouth, kStay}) EXPECT_DOUBLE_EQ(b.Prob(corner, u), 1.0 / 3.0);
  EXPECT_EQ(b.Prob(corner, kSouthEast), 0.0);
}

TEST(GridWorldTest, CornerOfOpenGridHasFourActions) {
  GridWorld w = BuildGridWorld({9, 9, {}, {4, 4}, 0.1});
  EXPECT_EQ(Actions(w.mdp, w.cells.StateOf({0, 0})),
            (std::vector<ActionId>{kEast, kSouthEast, kSouth, kStay}));
}

TEST(GridWorldTest, CellRingedByTrapsOnlyStays) {
  // (0,0) is walled in by traps, so the goal is unreachable from it.
  GridWorldSpec spec{3, 3, {{0, 1}, {1, 0}, {1, 1}}, {2, 2}, 0.1};
  try {
    BuildGridWorld(spec);
    FAIL() << "expected UnreachableCells";
  } catch (const UnreachableCells& e) {
    EXPECT_EQ(e.cells(), (std::vector<Cell>{{0, 0}}));
  }
}

TEST(GridWorldTest, RejectsInvalidSpecs) {
  EXPECT_THROW(BuildGridWorld({3, 3, {{2, 2}}, {2, 2}, 0.1}), InvalidArgument);
  EXPECT_THROW(BuildGridWorld({3, 3, {}, {3, 0}, 0.1}), InvalidArgument);
  EXPECT_THROW(BuildGridWorld({3, 3, {}, {0, 0}, 0.0}), InvalidArgument);
  EXPECT_THROW(BuildGridWorld({3, 3, {{5, 5}}, {0, 0}, 0.1}), InvalidArgument);
}

TEST(GridWorldTest, ShippedMazeSatisfiesStructuralInvariants) {
  GridWorld w = testing::ShippedMaze();
  const TabularMdp& m = w.mdp;
  EXPECT_EQ(w.spec.width, 9);
  EXPECT_EQ(w.spec.height, 9);
  const std::vector<int> dist = GoalDistances(w);
  for (StateId x = 0; x < m.num_states(); ++x) {
    EXPECT_GE(dist[x], 0) << "state " << x;
    ASSERT_FALSE(m.ValidActions(x).empty());
    EXPECT_TRUE(m.IsValid(x, kStay));
    for (ActionId u : m.ValidActions(x)) {
      auto outs = m.Outcomes(x, u);
      ASSERT_EQ(outs.size(), 1u);
      EXPECT_EQ(outs[0].prob, 1.0);
      if (m.IsAbsorbing(x)) {
        EXPECT_EQ(m.Next(x, u), x);
        EXPECT_EQ(m.Cost(x, u), 0.0);
      } else {
        EXPECT_EQ(m.Cost(x, u), 0.1);
      }
    }
  }
}

TEST(GridWorldTest, MazeTextRoundTrips) {
  const GridWorldSpec spec = LoadMaze(testing::DataPath("mazes/maze9x9_v1.txt"), 0.1);
  const GridWorldSpec again = ParseMaze(FormatMaze(spec), 0.1);
  EXPECT_EQ(again.traps, spec.traps);
  EXPECT_EQ(again.goal, spec.goal);
  EXPECT_THROW(ParseMaze("2 2\n..\n..\n", 0.1), InvalidArgument);
  EXPECT_THROW(ParseMaze("2 2\nG.\n.x\n", 0.1), InvalidArgument);
  EXPECT_THROW(ParseMaze("2 2\nG.\n", 0.1), InvalidArgument);
  EXPECT_THROW(LoadMaze("/nonexistent/maze.txt", 0.1), IoError);
}

TEST(GridWorldTest, StateIdsAreRowMajorOverFreeCells) {
  GridWorld w = BuildGridWorld({3, 3, {{1, 1}}, {2, 2}, 0.1});
  const std::vector<Cell> expected = {{0, 0}, {0, 1}, {0, 2}, {1, 0},
                                      {1, 2}, {2, 0}, {2, 1}, {2, 2}};
  for (StateId x = 0; x < 8; ++x) {
    EXPECT_EQ(w.cells.CellOf(x), expected[x]);
    EXPECT_EQ(w.cells.StateOf(expected[x]), x);
  }
  EXPECT_EQ(w.cells.StateOf({1, 1}), -1);
}

class StayPolicyTest : public ::testing::Test {
 protected:
  GridWorld world_ = BuildGridWorld({3, 3, {}, {2, 2}, 0.1});
};

TEST_F(StayPolicyTest, StayForeverTruncates) {
  std::vector<ActionId> acts(world_.mdp.num_states(), kStay);
  DeterministicPolicy stay(world_.mdp, acts);
  Rng rng = MakeRng(1);
  Episode e = SimulateEpisode(world_.mdp, stay.ToStochastic(world_.mdp), 0, 5, rng);
  EXPECT_EQ(e.length(), 5);
  EXPECT_EQ(e.outcome, EpisodeOutcome::kTruncated);
  EXPECT_EQ(e.final_state, 0);
}

TEST_F(StayPolicyTest, AdjacentToGoalAbsorbsInOneStep) {
  std::vector<ActionId> acts(world_.mdp.num_states(), kStay);
  const StateId x0 = world_.cells.StateOf({1, 1});
  acts[x0] = kSouthEast;
  DeterministicPolicy pi(world_.mdp, acts);
  Rng rng = MakeRng(2);
  Episode e = SimulateEpisode(world_.mdp, pi.ToStochastic(world_.mdp), x0, 200, rng);
  EXPECT_EQ(e.length(), 1);
  EXPECT_EQ(e.outcome, EpisodeOutcome::kAbsorbed);
  EXPECT_EQ(e.final_state, world_.goal_state);
}

TEST_F(StayPolicyTest, AbsorbingStartIsRejected) {
  Rng rng = MakeRng(3);
  EXPECT_THROW(SimulateEpisode(world_.mdp, UniformBehavior(world_.mdp), world_.goal_state, 10,
                               rng),
               PreconditionError);
}

TEST(EpisodeTest, SeededEpisodesAreIdentical) {
  GridWorld w = testing::ShippedMaze();
  const StochasticPolicy b = UniformBehavior(w.mdp);
  Rng r1 = MakeRng(42, {7});
  Rng r2 = MakeRng(42, {7});
  const Episode e1 = SimulateEpisode(w.mdp, b, 0, 200, r1);
  const Episode e2 = SimulateEpisode(w.mdp, b, 0, 200, r2);
  EXPECT_EQ(e1, e2);
  EXPECT_EQ(EpisodeToCsv(e1), EpisodeToCsv(e2));
  Rng r3 = MakeRng(43, {7});
  EXPECT_NE(EpisodeToCsv(SimulateEpisode(w.mdp, b, 0, 200, r3)), EpisodeToCsv(e1));
}

TEST(EpisodeTest, EpisodesStayInsideTheMdpAndRespectMaxSteps) {
  GridWorld w = testing::ShippedMaze();
  const StochasticPolicy b = UniformBehavior(w.mdp);
  for (int k = 0; k < 200; ++k) {
    Rng rng = MakeRng(9, {static_cast<std::uint64_t>(k)});
    const StateId x0 = k % (w.mdp.num_states() - 1) + (k % (w.mdp.num_states() - 1) >=
                                                              w.goal_state);
    const int max_steps = 1 + k % 60;
    const Episode e = SimulateEpisode(w.mdp, b, x0, max_steps, rng);
    EXPECT_LE(e.length(), max_steps);
    for (std::size_t t = 0; t < e.steps.size(); ++t) {
      const Step& s = e.steps[t];
      ASSERT_GE(s.state, 0);
      ASSERT_LT(s.state, w.mdp.num_states());
      EXPECT_TRUE(w.mdp.IsValid(s.state, s.action));
      EXPECT_EQ(s.cost, w.mdp.Cost(s.state, s.action));
      EXPECT_EQ(e.NextState(t), w.mdp.Next(s.state, s.action));
      EXPECT_FALSE(w.mdp.IsAbsorbing(s.state));
    }
    EXPECT_EQ(e.outcome == EpisodeOutcome::kAbsorbed, w.mdp.IsAbsorbing(e.final_state));
  }
}

TEST(EpisodeTest, DiscountedReturn) {
  Episode e;
  EXPECT_EQ(DiscountedReturn(e, 0.9), 0.0);
  e.steps = {{0, 0, 1.0}, {0, 0, 1.0}, {0, 0, 1.0}};
  EXPECT_NEAR(DiscountedReturn(e, 0.9), 2.71, 1e-12);
  EXPECT_EQ(DiscountedReturn(e, 1.0), 3.0);
}

TEST(TabularMdpTest, ValidatesConstruction) {
  // 2 states, 1 action; state 1 absorbing.
  auto build = [](std::vector<double> costs, double discount, std::vector<StateId> abs) {
    return TabularMdp::Deterministic(2, 1, {{0}, {0}}, {1, 1}, std::move(costs), discount,
                                     std::move(abs));
  };
  EXPECT_NO_THROW(build({1.0, 0.0}, 1.0, {1}));
  EXPECT_THROW(build({1.0, 0.5}, 1.0, {1}), InvalidArgument);  // absorbing cost
  EXPECT_THROW(build({NAN, 0.0}, 1.0, {1}), InvalidArgument);
  EXPECT_THROW(build({1.0, 0.0}, 1.5, {1}), InvalidArgument);
  EXPECT_THROW(build({1.0, 0.0}, 1.0, {}), InvalidArgument);
  EXPECT_NO_THROW(build({1.0, 0.0}, 0.9, {}));
  EXPECT_THROW(TabularMdp(1, 1, {{0}}, {{{0, 0.5}}}, {1.0}, 0.9, {}), InvalidArgument);
}

TEST(PolicyTest, RejectsBadRows) {
  GridWorld w = BuildGridWorld({2, 1, {}, {0, 1}, 0.1});
  const int na = w.mdp.num_actions();
  std::vector<double> probs(2 * na, 0.0);
  probs[kEast] = 0.5;
  probs[kStay] = 0.4;
  probs[na + kStay] = 1.0;
  EXPECT_THROW(StochasticPolicy(w.mdp, probs), InvalidArgument);
  probs[kStay] = 0.5;
  EXPECT_NO_THROW(StochasticPolicy(w.mdp, probs));
  probs[kWest] = 0.1;  // invalid move off the grid
  probs[kStay] = 0.4;
  EXPECT_THROW(StochasticPolicy(w.mdp, probs), InvalidArgument);
  EXPECT_THROW(DeterministicPolicy(w.mdp, {kWest, kStay}), InvalidArgument);
}

TEST(PolicyTest, SamplingMatchesProbabilities) {
  GridWorld w = BuildGridWorld({9, 9, {}, {4, 4}, 0.1});
  const StochasticPolicy b = UniformBehavior(w.mdp);
  Rng rng = MakeRng(5);
  std::vector<int> counts(kNumGridActions, 0);
  const int n = 90000;
  for (int i = 0; i < n; ++i) ++counts[b.Sample(0, rng)];
  // Corner (0,0): E, SE, S, Stay.
  for (ActionId u : {kEast, kSouthEast, kSouth, kStay}) EXPECT_NEAR(counts[u] / double(n), 0.25, 0.01);
  EXPECT_EQ(counts[kNorth] + counts[kWest], 0);
}

TEST(BytesTest, RoundTripAndTruncation) {
  Bytes b;
  ByteWriter w(b);
  w.U8(7);
  w.U32(0xdeadbeef);
  w.U64(1ull << 60);
  w.I32(-5);
  w.F64(-0.1);
  w.String("abc");
  ByteReader r(b);
  EXPECT_EQ(r.U8(), 7);
  EXPECT_EQ(r.U32(), 0xdeadbeefu);
  EXPECT_EQ(r.U64(), 1ull << 60);
  EXPECT_EQ(r.I32(), -5);
  EXPECT_EQ(r.F64(), -0.1);
  EXPECT_EQ(r.String(), "abc");
  EXPECT_NO_THROW(r.ExpectEnd());
  for (std::size_t cut = 0; cut < b.size(); ++cut) {
    ByteReader t(std::span(b.data(), cut));
    EXPECT_THROW(
        {
          t.U8();
          t.U32();
          t.U64();
          t.I32();
          t.F64();
          t.String();
        },
        MalformedInput)
        << "cut " << cut;
  }
}

}  // namespace
}  // namespace encsynth::mdp
