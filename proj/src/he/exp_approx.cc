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

#include "encsynth/he/exp_approx.h"

#include <cmath>
#include <numbers>

#include "encsynth/common/error.h"

namespace encsynth::he {
namespace {

// Coefficients of e^{-s c} in c: (-s)^k / k!.
std::vector<double> TaylorCoefficients(int degree, double s) {
  std::vector<double> c(degree + 1);
  long double term = 1.0L;
  for (int k = 0; k <= degree; ++k) {
    c[k] = static_cast<double>(term);
    term *= -static_cast<long double>(s) / (k + 1);
  }
  return c;
}

// Interpolant of e^{-s c} at the degree + 1 Chebyshev nodes of [0, c_max],
// expanded into monomials of c.
std::vector<double> ChebyshevCoefficients(int degree, double s, double c_max) {
  const int n = degree + 1;
  // Chebyshev-basis coefficients in t = 2c/c_max - 1.
  std::vector<long double> a(n, 0.0L);
  for (int j = 0; j < n; ++j) {
    long double sum = 0.0L;
    for (int i = 0; i < n; ++i) {
      const long double theta = std::numbers::pi_v<long double> * (i + 0.5L) / n;
      const long double t = std::cos(theta);
      const long double c = (t + 1.0L) * c_max / 2.0L;
      sum += std::exp(-static_cast<long double>(s) * c) * std::cos(j * theta);
    }
    a[j] = (j == 0 ? 1.0L : 2.0L) * sum / n;
  }
  // Monomials in t via T_{j+1} = 2 t T_j - T_{j-1}.
  std::vector<long double> poly_t(n, 0.0L);
  std::vector<long double> prev(n, 0.0L);
  std::vector<long double> cur(n, 0.0L);
  prev[0] = 1.0L;  // T_0
  poly_t[0] += a[0];
  if (n > 1) {
    cur[1] = 1.0L;  // T_1
    poly_t[1] += a[1];
  }
  for (int j = 2; j < n; ++j) {
    std::vector<long double> next(n, 0.0L);
    for (int k = 0; k + 1 < n; ++k) next[k + 1] += 2.0L * cur[k];
    for (int k = 0; k < n; ++k) next[k] -= prev[k];
    for (int k = 0; k < n; ++k) poly_t[k] += a[j] * next[k];
    prev = std::move(cur);
    cur = std::move(next);
  }
  // Substitute t = alpha c + beta.
  const long double alpha = 2.0L / c_max;
  const long double beta = -1.0L;
  std::vector<long double> out(n, 0.0L);
  std::vector<long double> power(n, 0.0L);  // (alpha c + beta)^k
  power[0] = 1.0L;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i <= k; ++i) out[i] += poly_t[k] * power[i];
    std::vector<long double> next(n, 0.0L);
    for (int i = 0; i <= k && i + 1 < n; ++i) {
      next[i + 1] += alpha * power[i];
      next[i] += beta * power[i];
    }
    power = std::move(next);
  }
  return {out.begin(), out.end()};
}

}  // namespace

const char* ExpMethodName(ExpMethod m) {
  return m == ExpMethod::kTaylorAtZero ? "taylor" : "chebyshev";
}

ExpMethod ParseExpMethod(const std::string& name) {
  if (name == "taylor") return ExpMethod::kTaylorAtZero;
  if (name == "chebyshev") return ExpMethod::kChebyshevOnDomain;
  throw InvalidArgument("unknown exp approximation method '" + name +
                        "' (expected taylor or chebyshev)");
}

ExpApproxConfig DefaultExpApproxConfig(double c_max, double lambda) {
  ExpApproxConfig config;
  config.c_max = c_max;
  config.lambda = lambda;
  while (c_max / (lambda * std::ldexp(1.0, config.squarings)) > 1.0) ++config.squarings;
  return config;
}

int ExpDepth(const ExpApproxConfig& config) {
  return PolyDepth(config.degree) + config.squarings;
}

ExpApprox::ExpApprox(ExpApproxConfig config) : config_(config) {
  if (config_.degree < 1) throw InvalidArgument("ExpApprox: degree must be >= 1");
  if (!(config_.c_max > 0.0) || !(config_.lambda > 0.0)) {
    throw InvalidArgument("ExpApprox: c_max and lambda must be positive");
  }
  if (config_.squarings < 0 || config_.squarings > 30) {
    throw InvalidArgument("ExpApprox: squarings must be in [0, 30]");
  }
  const double s = 1.0 / (config_.lambda * std::ldexp(1.0, config_.squarings));
  coeffs_ = config_.method == ExpMethod::kTaylorAtZero
                ? TaylorCoefficients(config_.degree, s)
                : ChebyshevCoefficients(config_.degree, s, config_.c_max);

  constexpr int kSamples = 100000;
  const double h = config_.c_max / (kSamples - 1);
  double max_err = 0.0;
  double max_slope = 0.0;
  double prev = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double c = i == kSamples - 1 ? config_.c_max : i * h;
    const double err = EvaluatePlain(c) - std::exp(-c / config_.lambda);
    max_err = std::max(max_err, std::abs(err));
    if (i > 0) max_slope = std::max(max_slope, std::abs(err - prev) / h);
    prev = err;
  }
  // Between two samples the error moves by at most h/2 times its slope; the
  // factor 2 on the slope absorbs curvature the differences miss.
  epsilon_ = max_err + h * max_slope + 1e-15;
}

CipherValue ExpApprox::Evaluate(const Evaluator& ev, const CipherValue& cost) const {
  try {
    return EvaluateWith(CipherOps{ev}, cost);
  } catch (LevelExhausted& e) {
    throw e.Within("exp_neg_scaled(degree " + std::to_string(config_.degree) + ", squarings " +
                   std::to_string(config_.squarings) + ")");
  }
}

double ExpApprox::EvaluatePlain(double cost) const { return EvaluateWith(PlainOps{}, cost); }

}  // namespace encsynth::he
