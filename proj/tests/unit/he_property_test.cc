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
#include <vector>

#include "encsynth/common/rng.h"
#include "encsynth/he/exp_approx.h"
#include "encsynth/he/poly_eval.h"
#include "encsynth/he/slot_backends.h"
#include "encsynth/he/slot_key_holders.h"
#include "he_programs.h"

namespace encsynth::he {
namespace {

using testing::ProgramLength;
using testing::RunProgram;
using testing::Uniform;

TEST(HePropertyTest, ExactAndNoiselessEmulatorAgreeBitForBit) {
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    ExactKeyHolder exact(HeProfile::Default());
    EmulatorKeyHolder emu(HeProfile::Default(), NoiseModel::None());
    const std::vector<double> out = RunProgram(trial, {&exact, &emu}, true);
    ASSERT_EQ(out[0], out[1]) << "trial " << trial;
  }
}

// Programs here combine each fresh input once and scale by |p| <= 1, so every
// injected error reaches the output with gain at most 1. A ciphertext product
// multiplies one operand's error by the other operand's value, which the
// sigma * sqrt(ops) bound cannot cover for inputs of size 10.
TEST(HePropertyTest, EmulatorNoiseWithinSixSigmaRootOps) {
  const double sigma = 0x1p-30;
  int within = 0;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    ExactKeyHolder exact(HeProfile::Default());
    EmulatorKeyHolder emu(HeProfile::Default(), NoiseModel{sigma, 0x1p-33, trial});
    const int num_ops = ProgramLength(trial);
    const std::vector<double> out = RunProgram(trial, {&exact, &emu}, false);
    // Each op injects at most two draws (fresh input plus the op itself).
    if (std::abs(out[1] - out[0]) <= 6.0 * sigma * std::sqrt(2.0 * num_ops)) ++within;
  }
  EXPECT_GE(within, 990);
}

TEST(HePropertyTest, LevelsAndScalesFollowTheContract) {
  const double delta = std::ldexp(1.0, 40);
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    Rng rng = MakeRng(trial, {1});
    EmulatorKeyHolder kh(HeProfile::Default(), NoiseModel{0x1p-30, 0x1p-33, trial});
    const Evaluator& ev = kh.evaluator();
    CipherValue c = kh.EncryptScalar(Uniform(rng, -1, 1));
    for (int step = 0; step < 12; ++step) {
      const int before = c.level;
      const std::size_t kind = UniformIndex(rng, 4);
      if (kind == 0) {
        const bool should_fail = c.level == 0;
        try {
          const CipherValue product = ev.Mul(c, c);
          ASSERT_FALSE(should_fail);
          ASSERT_EQ(product.level, before);
          c = ev.Rescale(product);
          ASSERT_EQ(c.level, before - 1);
        } catch (const LevelExhausted&) {
          ASSERT_TRUE(should_fail);
        }
      } else if (kind == 1) {
        if (c.level == 0) {
          ASSERT_THROW(ev.MulPlain(c, 0.5), LevelExhausted);
          continue;
        }
        c = ev.Rescale(ev.MulPlain(c, Uniform(rng, -1, 1)));
        ASSERT_EQ(c.level, before - 1);
      } else if (kind == 2) {
        c = ev.AddPlain(c, Uniform(rng, -1, 1));
        ASSERT_EQ(c.level, before);
      } else {
        const int target = static_cast<int>(UniformIndex(rng, before + 1));
        c = ev.AlignLevels(c, target);
        ASSERT_EQ(c.level, target);
      }
      ASSERT_LE(c.level, before);
      ASSERT_GE(c.level, 0);
      ASSERT_LE(std::abs(c.scale() - delta) / delta, std::ldexp(1.0, -20));
    }
  }
}

TEST(HePropertyTest, CertifiedExpBoundHoldsOnFreshSweep) {
  std::vector<ExpApproxConfig> configs = {DefaultExpApproxConfig(0.1, 0.15),
                                          DefaultExpApproxConfig(1.0, 0.15),
                                          DefaultExpApproxConfig(0.3, 0.15)};
  ExpApproxConfig cheb = DefaultExpApproxConfig(0.1, 0.15);
  cheb.method = ExpMethod::kChebyshevOnDomain;
  configs.push_back(cheb);
  ExpApproxConfig low = DefaultExpApproxConfig(0.1, 0.15);
  low.degree = 3;
  configs.push_back(low);
  for (const ExpApproxConfig& config : configs) {
    const ExpApprox approx(config);
    Rng rng = MakeRng(2024);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const double c = Uniform(rng, 0.0, config.c_max);
      worst = std::max(worst, std::abs(approx.EvaluatePlain(c) - std::exp(-c / config.lambda)));
    }
    EXPECT_LE(worst, approx.epsilon()) << ExpMethodName(config.method) << " c_max "
                                       << config.c_max << " degree " << config.degree;
  }
}

TEST(HePropertyTest, PolyEvalMatchesPlaintextOnEveryBackend) {
  ExactKeyHolder exact(HeProfile::Default());
  EmulatorKeyHolder emu(HeProfile::Default(), NoiseModel{});
  Rng rng = MakeRng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const int degree = static_cast<int>(UniformIndex(rng, 9));
    std::vector<double> coeffs(degree + 1);
    for (double& c : coeffs) c = Uniform(rng, -1, 1);
    const double x = Uniform(rng, -1, 1);
    const double plain = PolyEvalPlain(x, coeffs);
    ASSERT_EQ(exact.DecryptScalar(PolyEval(exact.evaluator(), exact.EncryptScalar(x), coeffs)),
              plain);
    ASSERT_NEAR(emu.DecryptScalar(PolyEval(emu.evaluator(), emu.EncryptScalar(x), coeffs)),
                plain, 1e-6);
  }
}

}  // namespace
}  // namespace encsynth::he
