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

#include <cmath>
#include <filesystem>
#include <sstream>

#include "encsynth/common/error.h"
#include "encsynth/experiments/commands.h"
#include "encsynth/experiments/config.h"
#include "encsynth/experiments/outputs.h"
#include "encsynth/re_rl/z_learning.h"
#include "test_util.h"

namespace encsynth::experiments {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("encsynth_exp_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ExperimentConfig ShippedConfig(const fs::path& out) {
  ExperimentConfig c;
  c.maze = testing::DataPath("mazes/maze9x9_v1.txt");
  c.out = out.string();
  return c;
}

std::vector<std::vector<std::string>> ParseGrid(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    rows.emplace_back();
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) rows.back().push_back(cell);
  }
  return rows;
}

TEST(NormalizedError, Examples) {
  const mdp::GridWorld w = mdp::BuildGridWorld(mdp::ParseMaze("3 1\n..G\n", 0.1));
  // States 0, 1 non-absorbing; 2 is the goal.
  EXPECT_NEAR(NormalizedError(w.mdp, {{1, 1, 0}}, {{1.1, 0.9, 0}}), 0.1, 1e-15);
  EXPECT_EQ(NormalizedError(w.mdp, {{1, 1, 0}}, {{1, 1, 0}}), 0.0);
  EXPECT_NEAR(NormalizedError(w.mdp, {{2, 4, 0}}, {{2, 2, 0}}), 1.0 / 3.0, 1e-15);
  EXPECT_THROW(NormalizedError(w.mdp, {{0, 0, 0}}, {{1, 1, 0}}), DomainError);
  EXPECT_THROW(NormalizedError(w.mdp, {{1, 1}}, {{1, 1, 0}}), InvalidArgument);
}

TEST(ValueGrid, InitialSnapshotIsZeroWithTrapNaNs) {
  const mdp::GridWorld w = testing::SmallMaze();
  const auto grid = ParseGrid(ValueGridCsv(w, re::DesirabilityTable::Ones(w.mdp), 0.15));
  ASSERT_EQ(grid.size(), 3u);
  for (int r = 0; r < 3; ++r) {
    ASSERT_EQ(grid[r].size(), 3u);
    for (int c = 0; c < 3; ++c) {
      EXPECT_EQ(grid[r][c], w.cells.IsTrap({r, c}) ? "NaN" : "0") << r << "," << c;
    }
  }
}

TEST(ValueGrid, SingleCellMaze) {
  const mdp::GridWorld w = mdp::BuildGridWorld(mdp::ParseMaze("1 1\nG\n", 0.1));
  EXPECT_EQ(ValueGridCsv(w, re::DesirabilityTable::Ones(w.mdp), 0.15), "0\n");
}

// Soft values are not monotone in the goal distance globally (dead ends cost
// more under a diffusing behavior policy), but every state has a successor one
// step closer to the goal with a strictly lower value.
TEST(ValueGrid, ConvergedValuesDescendTowardTheGoal) {
  const fs::path dir = TempDir("vi");
  const Experiment e = CmdVi(ShippedConfig(dir));
  const mdp::TabularMdp& m = e.world.mdp;
  const std::vector<int> dist = mdp::GoalDistances(e.world);
  const auto grid = ParseGrid(ReadFile(dir / "value_star.csv"));
  auto value = [&](mdp::StateId x) {
    const auto [r, c] = e.world.cells.CellOf(x);
    return std::stod(grid[r][c]);
  };
  for (mdp::StateId x = 0; x < m.num_states(); ++x) {
    if (m.IsAbsorbing(x)) {
      EXPECT_EQ(value(x), 0.0);
      continue;
    }
    bool descends = false;
    for (mdp::ActionId u : m.ValidActions(x)) {
      for (const mdp::Outcome& o : m.Outcomes(x, u)) {
        descends |= dist[o.next] == dist[x] - 1 && value(o.next) < value(x);
      }
    }
    EXPECT_TRUE(descends) << "state " << x;
  }
  EXPECT_LE(e.direct_gap, 1e-10);
  EXPECT_LE(e.bellman_residual, 1e-10);
}

TEST(ErrorSeriesCsv, RoundTrips) {
  const ErrorSeries s = {0.5, 0.25, 1.0 / 3.0, 1e-17};
  EXPECT_EQ(ParseErrorSeriesCsv(ErrorSeriesCsv(s)), s);
  EXPECT_THROW(ParseErrorSeriesCsv("bogus\n"), IoError);
  EXPECT_THROW(ParseErrorSeriesCsv("episode,normalized_error\n2,0.1\n"), IoError);
}

TEST(Config, Validation) {
  ExperimentConfig c = ShippedConfig(TempDir("cfg"));
  EXPECT_NO_THROW(ValidateConfig(c));
  auto broken = [&](auto mutate) {
    ExperimentConfig b = c;
    mutate(b);
    return b;
  };
  EXPECT_THROW(ValidateConfig(broken([](auto& b) { b.maze = "/no/such/maze"; })), InvalidArgument);
  EXPECT_THROW(ValidateConfig(broken([](auto& b) { b.lambda = 0; })), InvalidArgument);
  EXPECT_THROW(ValidateConfig(broken([](auto& b) { b.backend = "paillier"; })), InvalidArgument);
  EXPECT_THROW(ValidateConfig(broken([](auto& b) { b.exp_squarings = 2; })), InvalidArgument);
  EXPECT_THROW(ValidateConfig(broken([](auto& b) { b.ring_dimension = 1000; })), InvalidArgument);
  EXPECT_THROW(ValidateConfig(broken([](auto& b) {
                 b.backend = "rlwe";
                 b.ring_dimension = 1 << 16;
               })),
               InvalidArgument);
  // The exact backend has no level budget.
  EXPECT_NO_THROW(ValidateConfig(broken([](auto& b) {
    b.backend = "exact";
    b.exp_squarings = 6;
  })));
}

TEST(Config, JsonUsesFlagNames) {
  const std::string j = ConfigToJson(ExperimentConfig{});
  for (const char* key : {"\"max-steps\"", "\"chain-bits\"", "\"exp-degree\"", "\"checkpoints\""}) {
    EXPECT_NE(j.find(key), std::string::npos) << key;
  }
}

TEST(CmdZlearn, ZeroEpisodes) {
  ExperimentConfig c = ShippedConfig(TempDir("z0"));
  c.episodes = 0;
  c.checkpoints = {0};
  const LearningOutcome r = CmdZlearn(c);
  EXPECT_TRUE(r.series.empty());
  EXPECT_EQ(ReadFile(fs::path(c.out) / "error_series.csv"), "episode,normalized_error\n");
  const auto grid = ParseGrid(ReadFile(fs::path(c.out) / "value_k0.csv"));
  for (const auto& row : grid) {
    for (const auto& cell : row) EXPECT_TRUE(cell == "0" || cell == "NaN");
  }
}

TEST(CmdZlearn, DefaultSettingsConvergeWithDecreasingTrend) {
  const LearningOutcome r = CmdZlearn(ShippedConfig(TempDir("zfull")));
  ASSERT_EQ(r.series.size(), 5000u);
  for (double e : r.series) EXPECT_GE(e, 0.0);
  EXPECT_LE(r.series.back(), 0.05);
  EXPECT_LT(r.series.back(), r.series.front());
  double head = 0, tail = 0;
  for (int k = 0; k < 100; ++k) head += r.series[k] / 100;
  for (int k = 4500; k < 5000; ++k) tail += r.series[k] / 500;
  EXPECT_LT(tail, 0.2 * head);
  for (int k : {1, 10, 100, 1000, 5000}) EXPECT_EQ(r.snapshots.count(k), 1u) << k;
}

TEST(CmdEncrypted, ExactBackendReproducesPlaintextSeries) {
  ExperimentConfig c = ShippedConfig(TempDir("ex"));
  c.episodes = 400;
  c.seed = 6;
  c.backend = "exact";
  c.checkpoints = {0, 1, 100, 400};
  const EncryptedOutcome enc = CmdEncrypted(c);
  ExperimentConfig p = c;
  p.out = TempDir("exz").string();
  p.factor = "approx";
  const LearningOutcome plain = CmdZlearn(p);
  EXPECT_EQ(enc.learning.series, plain.series);
  EXPECT_EQ(enc.learning.z, plain.z);
  for (const char* f : {"error_series.csv", "value_k0.csv", "value_k1.csv", "value_k100.csv",
                        "value_k400.csv"}) {
    EXPECT_EQ(ReadFile(fs::path(c.out) / f), ReadFile(fs::path(p.out) / f)) << f;
  }
}

TEST(Determinism, IdenticalConfigsGiveIdenticalFiles) {
  for (const std::string command : {"vi", "zlearn", "encrypted", "baselines"}) {
    std::vector<std::map<std::string, std::string>> runs;
    for (int i = 0; i < 2; ++i) {
      const fs::path dir = TempDir("det_" + command + std::to_string(i));
      ExperimentConfig c = ShippedConfig("out");
      c.episodes = 60;
      c.q_steps = 20000;
      c.mc_sweeps = 2;
      c.mc_episodes = 10;
      // Same `out` string in run_config.json; files land in different dirs.
      const fs::path cwd = fs::current_path();
      fs::current_path(dir);
      if (command == "vi") CmdVi(c);
      if (command == "zlearn") CmdZlearn(c);
      if (command == "encrypted") CmdEncrypted(c);
      if (command == "baselines") CmdBaselines(c);
      fs::current_path(cwd);
      std::map<std::string, std::string> files;
      for (const auto& entry : fs::directory_iterator(dir / "out")) {
        files[entry.path().filename().string()] = ReadFile(entry.path());
      }
      runs.push_back(std::move(files));
    }
    EXPECT_FALSE(runs[0].empty());
    EXPECT_EQ(runs[0], runs[1]) << command;
  }
}

TEST(CmdBaselines, OraclesAgree) {
  const fs::path dir = TempDir("base");
  ExperimentConfig c = ShippedConfig(dir);
  c.maze = testing::DataPath("mazes/maze3x3.txt");
  c.discount = 0.9;
  CmdBaselines(c);
  const std::string metrics = ReadFile(dir / "metrics.json");
  EXPECT_NE(metrics.find("\"optimal_action_fraction\": 1.0"), std::string::npos) << metrics;
  EXPECT_EQ(ParseGrid(ReadFile(dir / "value_vi.csv")).size(), 3u);
}

TEST(CmdCompare, JoinsSeries) {
  const fs::path root = TempDir("cmp");
  for (int episodes : {3, 5}) {
    ExperimentConfig c = ShippedConfig(root / ("run" + std::to_string(episodes)));
    c.episodes = episodes;
    CmdZlearn(c);
  }
  CmdCompare({(root / "run3").string(), (root / "run5").string()}, (root / "joined").string());
  const std::string csv = ReadFile(root / "joined" / "compare.csv");
  const auto rows = ParseGrid(csv);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"episode", "run3", "run5"}));
  EXPECT_EQ(rows[5].size(), 3u);
  EXPECT_EQ(rows[5][1], "");
  EXPECT_THROW(CmdCompare({(root / "missing").string()}, (root / "j2").string()), IoError);
}

TEST(RunSeeds, IsolatedOutputDirectories) {
  const fs::path root = TempDir("seeds");
  ExperimentConfig c = ShippedConfig(root);
  c.episodes = 20;
  RunSeeds(c, {1, 2, 3}, [](const ExperimentConfig& s) { CmdZlearn(s); });
  for (int s : {1, 2, 3}) {
    EXPECT_TRUE(fs::exists(root / ("seed_" + std::to_string(s)) / "error_series.csv"));
  }
  EXPECT_NE(ReadFile(root / "seed_1" / "error_series.csv"),
            ReadFile(root / "seed_2" / "error_series.csv"));
}

}  // namespace
}  // namespace encsynth::experiments
