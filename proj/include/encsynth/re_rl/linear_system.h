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

#ifndef ENCSYNTH_RE_RL_LINEAR_SYSTEM_H_
#define ENCSYNTH_RE_RL_LINEAR_SYSTEM_H_

#include <string>
#include <vector>

#include "encsynth/common/error.h"
#include "encsynth/re_rl/problem.h"

namespace encsynth::re {

// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }
  double& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  std::vector<double> Multiply(const std::vector<double>& v) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// Gaussian elimination with partial pivoting. Throws SingularMatrix when a
// pivot falls below `pivot_tol` times the largest entry of its column.
std::vector<double> SolveDense(DenseMatrix a, std::vector<double> b, double pivot_tol = 1e-14);

// Z = A Z + w over the non-absorbing states, in compact index order.
struct LinearSystem {
  DenseMatrix a;
  std::vector<double> w;
  std::vector<StateId> index_to_state;
  // -1 for absorbing states.
  std::vector<int> state_to_index;

  int size() const { return static_cast<int>(w.size()); }
  // Expands a compact solution into a full DesirabilityTable.
  DesirabilityTable Expand(const mdp::TabularMdp& mdp, const std::vector<double>& z) const;
  std::vector<double> Compact(const DesirabilityTable& z) const;
};

// a_ij = sum_{u: F(i,u)=j} b(u|i) e^{-C(i,u)/lambda},
// w_i  = sum_{u: F(i,u) absorbing} b(u|i) e^{-C(i,u)/lambda}.
LinearSystem BuildLinearSystem(const ReProblem& problem);

struct LsviResult {
  DesirabilityTable z;
  int iterations = 0;
};

// The system has no absorbing mass (w = 0), so its only fixed point is Z = 0.
class DegenerateSystem : public Error {
 public:
  using Error::Error;
};

// Iterates Z <- A Z + w from `z0` until ||Z_{k+1} - Z_k||_inf <= tol and
// returns Z_{k+1}. Throws DegenerateSystem when w = 0 and NonConvergence after
// `max_iterations`.
LsviResult LsviSolve(const mdp::TabularMdp& mdp, const LinearSystem& system,
                     const std::vector<double>& z0, double tol, int max_iterations = 1000000);
// Same, from Z0 = 1.
LsviResult LsviSolve(const mdp::TabularMdp& mdp, const LinearSystem& system, double tol);

// Solves (I - A) Z = w directly.
DesirabilityTable SolveDirect(const mdp::TabularMdp& mdp, const LinearSystem& system);

struct ContractionReport {
  bool contractive = false;
  double spectral_radius = 0.0;
  int iterations = 0;
};

// Power iteration on A from the all-ones vector (200 iterations max, 1e-6
// relative tolerance).
ContractionReport ContractionCheck(const LinearSystem& system);

// ||Z - (A Z + w)||_inf on the compact vector of `z`.
double BellmanZResidual(const LinearSystem& system, const DesirabilityTable& z);

// `rows cols` header line, then one row of A per line followed by a line with
// w; entries printed with 17 significant digits.
std::string LinearSystemToText(const LinearSystem& system);

}  // namespace encsynth::re

#endif  // ENCSYNTH_RE_RL_LINEAR_SYSTEM_H_
