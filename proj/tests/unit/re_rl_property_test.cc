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

#include "encsynth/re_rl/linear_system.h"
#include "encsynth/re_rl/path_integral.h"
#include "encsynth/re_rl/policy.h"
#include "encsynth/re_rl/z_learning.h"
#include "test_util.h"

namespace encsynth::re {
namespace {

TEST(ReRlPropertyTest, LsviMatchesDirectSolveOnRandomMazes) {
  Rng rng = MakeRng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const mdp::TabularMdp m = testing::RandomMaze(rng);
    const double lambda = 0.1 + UniformUnit(rng);
    const ReProblem p(m, mdp::UniformBehavior(m), lambda);
    const LinearSystem s = BuildLinearSystem(p);
    ASSERT_TRUE(ContractionCheck(s).contractive);
    const LsviResult r = LsviSolve(m, s, 1e-13);
    const DesirabilityTable d = SolveDirect(m, s);
    for (std::size_t x = 0; x < d.size(); ++x) ASSERT_NEAR(r.z[x], d[x], 1e-10);
    ASSERT_LE(BellmanZResidual(s, r.z), 1e-10);
  }
}

TEST(ReRlPropertyTest, ZUpdatePreservesPositivity) {
  Rng rng = MakeRng(55);
  const auto world = testing::SmallMaze();
  const mdp::TabularMdp& m = world.mdp;
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> values(m.num_states());
    for (double& v : values) v = std::exp(-40.0 * UniformUnit(rng));
    DesirabilityTable z(m, values);
    StateId x = static_cast<StateId>(UniformIndex(rng, m.num_states()));
    if (m.IsAbsorbing(x)) continue;
    const ActionId u = m.ValidActions(x)[UniformIndex(rng, m.ValidActions(x).size())];
    const double alpha = trial % 10 == 0 ? (trial % 20 == 0 ? 0.0 : 1.0) : UniformUnit(rng);
    ZLearningStep(m, z, x, 5.0 * UniformUnit(rng), m.Next(x, u), alpha, 0.15);
    for (std::size_t y = 0; y < z.size(); ++y) ASSERT_GT(z[y], 0.0);
  }
}

TEST(ReRlPropertyTest, BoltzmannPolicyIsKlOptimal) {
  Rng rng = MakeRng(909);
  for (int problem = 0; problem < 5; ++problem) {
    const mdp::TabularMdp m = testing::RandomMaze(rng, 4);
    const ReProblem p(m, mdp::UniformBehavior(m), 0.2 + UniformUnit(rng));
    const DesirabilityTable z = SolveDirect(m, BuildLinearSystem(p));
    const mdp::StochasticPolicy opt = BoltzmannPolicy(p, z);
    const ValueTable v_opt = KlPolicyValueExact(p, opt);
    for (int k = 0; k < 50; ++k) {
      // Perturb each row multiplicatively, keeping full support so the
      // policy still terminates.
      std::vector<double> probs(std::size_t(m.num_states()) * m.num_actions(), 0.0);
      for (StateId x = 0; x < m.num_states(); ++x) {
        double total = 0.0;
        for (ActionId u : m.ValidActions(x)) {
          const double w = opt.Prob(x, u) * std::exp(2.0 * UniformUnit(rng) - 1.0);
          probs[std::size_t(x) * m.num_actions() + u] = w;
          total += w;
        }
        for (ActionId u : m.ValidActions(x)) probs[std::size_t(x) * m.num_actions() + u] /= total;
      }
      const ValueTable v = KlPolicyValueExact(p, mdp::StochasticPolicy(m, probs));
      for (std::size_t x = 0; x < v.size(); ++x) ASSERT_LE(v_opt[x], v[x] + 1e-9);
    }
  }
}

// Variance of the estimator over independent batches shrinks as 1/N.
TEST(ReRlPropertyTest, PathIntegralVarianceScalesInverselyWithN) {
  const mdp::TabularMdp m = mdp::TabularMdp::Deterministic(
      2, 2, {{0, 1}, {0, 1}}, {1, 1, 1, 1}, {1.0, 2.0, 0.0, 0.0}, 1.0, {1});
  const ReProblem p(m, mdp::UniformBehavior(m), 1.0);
  constexpr int kBatches = 200;
  std::vector<double> n_var;
  for (int n : {100, 1000, 10000}) {
    double mean = 0.0;
    double m2 = 0.0;
    for (int b = 0; b < kBatches; ++b) {
      Rng rng = MakeRng(31, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(b)});
      std::vector<mdp::Episode> eps;
      eps.reserve(n);
      for (int i = 0; i < n; ++i) eps.push_back(mdp::SimulateEpisode(m, p.behavior(), 0, 5, rng));
      const double est = PathIntegralEstimate(eps, 1.0);
      const double delta = est - mean;
      mean += delta / (b + 1);
      m2 += delta * (est - mean);
    }
    n_var.push_back(n * m2 / (kBatches - 1));
  }
  // N * Var is constant up to a factor 2.
  for (double v : n_var) {
    EXPECT_LE(v, 2.0 * n_var[0]);
    EXPECT_GE(v, 0.5 * n_var[0]);
  }
}

}  // namespace
}  // namespace encsynth::re
