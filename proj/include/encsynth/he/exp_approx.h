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

#ifndef ENCSYNTH_HE_EXP_APPROX_H_
#define ENCSYNTH_HE_EXP_APPROX_H_

#include <string>
#include <vector>

#include "encsynth/he/evaluator.h"
#include "encsynth/he/poly_eval.h"

namespace encsynth::he {

enum class ExpMethod { kTaylorAtZero, kChebyshevOnDomain };

const char* ExpMethodName(ExpMethod m);
// Accepts "taylor" and "chebyshev".
ExpMethod ParseExpMethod(const std::string& name);

// Approximates e^{-c/lambda} for c in [0, c_max]: a degree-d polynomial p of
// the cost with p(c) ~ e^{-c/(lambda 2^m)}, then m squarings.
struct ExpApproxConfig {
  int degree = 8;
  double c_max = 0.1;
  double lambda = 0.15;
  int squarings = 0;
  ExpMethod method = ExpMethod::kTaylorAtZero;

  bool operator==(const ExpApproxConfig&) const = default;
};

// Taylor, degree 8, and the smallest m with c_max / (lambda 2^m) <= 1.
ExpApproxConfig DefaultExpApproxConfig(double c_max, double lambda);

// PolyDepth(degree) + squarings.
int ExpDepth(const ExpApproxConfig& config);

class ExpApprox {
 public:
  // Builds the coefficients and certifies the error bound by a dense sweep of
  // the domain (10^5 points) plus a first-order margin for the gaps between
  // sample points.
  explicit ExpApprox(ExpApproxConfig config);

  const ExpApproxConfig& config() const { return config_; }
  // Monomial coefficients in the raw cost c, constant first.
  const std::vector<double>& coefficients() const { return coeffs_; }
  // Certified sup-norm error against e^{-c/lambda} on [0, c_max].
  double epsilon() const { return epsilon_; }
  int depth() const { return ExpDepth(config_); }

  template <class Ops>
  typename Ops::Value EvaluateWith(const Ops& ops, const typename Ops::Value& cost) const {
    typename Ops::Value y = PolyEvalWith(ops, cost, coeffs_);
    for (int i = 0; i < config_.squarings; ++i) y = ops.Rescale(ops.Mul(y, y));
    return y;
  }

  // e^{-c/lambda} over an encrypted cost. The domain c in [0, c_max] is the
  // caller's contract; it cannot be checked under encryption.
  CipherValue Evaluate(const Evaluator& ev, const CipherValue& cost) const;
  double EvaluatePlain(double cost) const;

 private:
  ExpApproxConfig config_;
  std::vector<double> coeffs_;
  double epsilon_ = 0.0;
};

}  // namespace encsynth::he

#endif  // ENCSYNTH_HE_EXP_APPROX_H_
