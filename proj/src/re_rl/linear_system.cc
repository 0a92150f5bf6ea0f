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

#include "encsynth/re_rl/linear_system.h"

#include <cmath>
#include <cstdio>
#include <limits>

namespace encsynth::re {

std::vector<double> DenseMatrix::Multiply(const std::vector<double>& v) const {
  std::vector<double> out(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    const double* row = &data_[std::size_t(i) * cols_];
    double acc = 0.0;
    for (int j = 0; j < cols_; ++j) acc += row[j] * v[j];
    out[i] = acc;
  }
  return out;
}

std::vector<double> SolveDense(DenseMatrix a, std::vector<double> b, double pivot_tol) {
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n) {
    throw InvalidArgument("SolveDense: dimension mismatch");
  }
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double col_max = 0.0;
    for (int i = k; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(pivot, k))) pivot = i;
      col_max = std::max(col_max, std::abs(a(i, k)));
    }
    if (col_max == 0.0 || std::abs(a(pivot, k)) <= pivot_tol * std::max(1.0, col_max)) {
      throw SingularMatrix("SolveDense: matrix is singular at column " + std::to_string(k));
    }
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      std::swap(b[k], b[pivot]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double acc = b[i];
    for (int j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

DesirabilityTable LinearSystem::Expand(const mdp::TabularMdp& mdp,
                                       const std::vector<double>& z) const {
  std::vector<double> full(mdp.num_states(), 1.0);
  for (int i = 0; i < size(); ++i) full[index_to_state[i]] = z[i];
  return DesirabilityTable(mdp, std::move(full));
}

std::vector<double> LinearSystem::Compact(const DesirabilityTable& z) const {
  std::vector<double> out(size());
  for (int i = 0; i < size(); ++i) out[i] = z[index_to_state[i]];
  return out;
}

LinearSystem BuildLinearSystem(const ReProblem& problem) {
  const mdp::TabularMdp& mdp = problem.mdp();
  LinearSystem sys;
  sys.state_to_index.assign(mdp.num_states(), -1);
  for (StateId x = 0; x < mdp.num_states(); ++x) {
    if (mdp.IsAbsorbing(x)) continue;
    sys.state_to_index[x] = static_cast<int>(sys.index_to_state.size());
    sys.index_to_state.push_back(x);
  }
  const int n = static_cast<int>(sys.index_to_state.size());
  sys.a = DenseMatrix(n, n);
  sys.w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const StateId x = sys.index_to_state[i];
    for (ActionId u : mdp.ValidActions(x)) {
      const double weight =
          problem.behavior().Prob(x, u) * std::exp(-mdp.Cost(x, u) / problem.lambda());
      const StateId next = mdp.Next(x, u);
      if (mdp.IsAbsorbing(next)) {
        sys.w[i] += weight;
      } else {
        sys.a(i, sys.state_to_index[next]) += weight;
      }
    }
  }
  return sys;
}

LsviResult LsviSolve(const mdp::TabularMdp& mdp, const LinearSystem& system,
                     const std::vector<double>& z0, double tol, int max_iterations) {
  if (static_cast<int>(z0.size()) != system.size()) {
    throw InvalidArgument("LsviSolve: initial vector has the wrong size");
  }
  bool has_mass = false;
  for (double wi : system.w) has_mass |= wi > 0.0;
  if (!has_mass && system.size() > 0) {
    throw DegenerateSystem(
        "LsviSolve: w = 0, no state reaches the absorbing set in one step; the only fixed "
        "point is Z = 0, which is not a valid desirability");
  }
  std::vector<double> z = z0;
  for (int k = 1; k <= max_iterations; ++k) {
    std::vector<double> next = system.a.Multiply(z);
    double delta = 0.0;
    for (int i = 0; i < system.size(); ++i) {
      next[i] += system.w[i];
      delta = std::max(delta, std::abs(next[i] - z[i]));
    }
    z = std::move(next);
    if (delta <= tol) return {system.Expand(mdp, z), k};
    if (!std::isfinite(delta)) break;
  }
  throw NonConvergence(
      "LsviSolve: no convergence within " + std::to_string(max_iterations) +
      " iterations; the spectral radius of A is probably >= 1 (zero-cost cycles?)");
}

LsviResult LsviSolve(const mdp::TabularMdp& mdp, const LinearSystem& system, double tol) {
  return LsviSolve(mdp, system, std::vector<double>(system.size(), 1.0), tol);
}

DesirabilityTable SolveDirect(const mdp::TabularMdp& mdp, const LinearSystem& system) {
  const int n = system.size();
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = (i == j ? 1.0 : 0.0) - system.a(i, j);
  }
  return system.Expand(mdp, SolveDense(std::move(m), system.w));
}

ContractionReport ContractionCheck(const LinearSystem& system) {
  constexpr int kMaxIterations = 200;
  constexpr double kRelTol = 1e-6;
  const int n = system.size();
  ContractionReport report;
  if (n == 0) {
    report.contractive = true;
    return report;
  }
  std::vector<double> v(n, 1.0);
  double estimate = 0.0;
  for (int k = 1; k <= kMaxIterations; ++k) {
    std::vector<double> next = system.a.Multiply(v);
    double norm = 0.0;
    for (double e : next) norm = std::max(norm, std::abs(e));
    report.iterations = k;
    if (norm == 0.0) {
      estimate = 0.0;  // nilpotent
      break;
    }
    for (double& e : next) e /= norm;
    const double previous = estimate;
    estimate = norm;
    v = std::move(next);
    if (k > 1 && std::abs(estimate - previous) <= kRelTol * estimate) break;
  }
  report.spectral_radius = estimate;
  report.contractive = estimate < 1.0;
  return report;
}

double BellmanZResidual(const LinearSystem& system, const DesirabilityTable& z) {
  const std::vector<double> zc = system.Compact(z);
  const std::vector<double> az = system.a.Multiply(zc);
  double worst = 0.0;
  for (int i = 0; i < system.size(); ++i) {
    worst = std::max(worst, std::abs(zc[i] - (az[i] + system.w[i])));
  }
  return worst;
}

std::string LinearSystemToText(const LinearSystem& system) {
  const int n = system.size();
  std::string out = std::to_string(n) + " " + std::to_string(n) + "\n";
  char buf[40];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof(buf), j ? " %.17g" : "%.17g", system.a(i, j));
      out += buf;
    }
    out += '\n';
  }
  for (int i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof(buf), i ? " %.17g" : "%.17g", system.w[i]);
    out += buf;
  }
  out += '\n';
  return out;
}

}  // namespace encsynth::re
