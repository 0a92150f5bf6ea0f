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

#ifndef ENCSYNTH_RLWE_POLY_H_
#define ENCSYNTH_RLWE_POLY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "encsynth/rlwe/params.h"

namespace encsynth::rlwe {

// A ring element in residue form over a list of context primes. Residues are
// kept in the NTT domain unless a function says otherwise.
struct RnsPoly {
  std::vector<std::size_t> primes;
  std::vector<std::vector<u64>> residues;

  std::size_t size() const { return primes.size(); }
};

// Prime indices 0..level, optionally followed by the special prime.
std::vector<std::size_t> ChainPrimes(const RlweContext& ctx, int level, bool with_special);

RnsPoly ZeroPoly(const RlweContext& ctx, std::vector<std::size_t> primes);

// NTT-domain element with the given signed integer coefficients.
RnsPoly FromCoefficients(const RlweContext& ctx, std::span<const std::int64_t> coeffs,
                         std::vector<std::size_t> primes);
// Same for integral long double coefficients of any magnitude.
RnsPoly FromCoefficients(const RlweContext& ctx, std::span<const long double> coeffs,
                         std::vector<std::size_t> primes);

void AddInPlace(const RlweContext& ctx, RnsPoly& a, const RnsPoly& b);
void SubInPlace(const RlweContext& ctx, RnsPoly& a, const RnsPoly& b);
RnsPoly Multiply(const RlweContext& ctx, const RnsPoly& a, const RnsPoly& b);
void MultiplyAccumulate(const RlweContext& ctx, RnsPoly& acc, const RnsPoly& a,
                        const RnsPoly& b);
// Adds or multiplies by the integer k (given as an integral long double).
void AddConstantInPlace(const RlweContext& ctx, RnsPoly& a, long double k);
void MulConstantInPlace(const RlweContext& ctx, RnsPoly& a, long double k);
void NegateInPlace(const RlweContext& ctx, RnsPoly& a);

// Keeps the residues of the given primes (a subset of a's).
RnsPoly Restrict(const RnsPoly& a, const std::vector<std::size_t>& primes);

// round(a / p) where p is the last prime of `a`; the result drops that prime.
RnsPoly DivideRoundByLast(const RlweContext& ctx, const RnsPoly& a);

// Centered integer coefficients (magnitude below half the product of a's
// primes) by signed-digit Garner reconstruction, as long doubles.
std::vector<long double> CenteredCoefficients(const RlweContext& ctx, const RnsPoly& a);

}  // namespace encsynth::rlwe

#endif  // ENCSYNTH_RLWE_POLY_H_
