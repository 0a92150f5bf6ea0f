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

#ifndef ENCSYNTH_RLWE_ENCODER_H_
#define ENCSYNTH_RLWE_ENCODER_H_

#include <complex>
#include <span>
#include <vector>

namespace encsynth::rlwe {

// Canonical-embedding encoder for Z[X]/(X^n + 1) with n/2 complex slots;
// slot j is the evaluation at zeta^(5^j), zeta = e^(i pi / n). Only real
// slot values are used here. The embedding and its inverse are the O(n log n)
// "special FFT" over the 5-power rotation group.
class Encoder {
 public:
  explicit Encoder(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t slots() const { return n_ / 2; }

  // Integer coefficients round(scale * m) of the polynomial m whose slots hold
  // `values` (zero-padded).
  std::vector<long double> Encode(std::span<const double> values, long double scale) const;
  // Real parts of the slots of coeffs / scale.
  std::vector<double> Decode(std::span<const long double> coeffs, long double scale) const;

  // Slot vector of m by direct evaluation at each root; O(n^2), for tests.
  std::vector<std::complex<double>> EvaluateNaive(std::span<const long double> coeffs) const;

 private:
  void Embed(std::vector<std::complex<double>>& v) const;
  void EmbedInverse(std::vector<std::complex<double>>& v) const;

  std::size_t n_;
  std::vector<std::size_t> rot_group_;
  std::vector<std::complex<double>> ksi_;  // e^(2 pi i k / 2n), k = 0..2n
};

}  // namespace encsynth::rlwe

#endif  // ENCSYNTH_RLWE_ENCODER_H_
