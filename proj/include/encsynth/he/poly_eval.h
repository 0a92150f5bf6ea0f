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

#ifndef ENCSYNTH_HE_POLY_EVAL_H_
#define ENCSYNTH_HE_POLY_EVAL_H_

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "encsynth/common/error.h"
#include "encsynth/he/evaluator.h"

namespace encsynth::he {

// Multiplicative depth of PolyEval for a degree-d polynomial: 0 for a
// constant, ceil(log2 d) + 1 otherwise (powers, then one coefficient product).
int PolyDepth(int degree);
// Depth of the power x^k inside the power tree: ceil(log2 k).
int PowerDepth(int k);

// Ciphertext operations in the shape the evaluation templates expect.
struct CipherOps {
  using Value = CipherValue;
  const Evaluator& ev;

  Value Add(const Value& a, const Value& b) const { return ev.Add(a, b); }
  Value AddPlain(const Value& a, double p) const { return ev.AddPlain(a, p); }
  Value Mul(const Value& a, const Value& b) const { return ev.Mul(a, b); }
  Value MulPlain(const Value& a, double p) const { return ev.MulPlain(a, p); }
  Value Rescale(const Value& a) const { return ev.Rescale(a); }
  Value Align(const Value& a, int level) const { return ev.AlignLevels(a, level); }
  Value Constant(double v, const Value& like) const { return ev.ConstantLike(v, like); }
  int Level(const Value& a) const { return a.level; }
};

// The same operations on doubles. Running a template with PlainOps performs
// exactly the floating-point operations the exact backend performs.
struct PlainOps {
  using Value = double;

  Value Add(Value a, Value b) const { return a + b; }
  Value AddPlain(Value a, double p) const { return a + p; }
  Value Mul(Value a, Value b) const { return a * b; }
  Value MulPlain(Value a, double p) const { return a * p; }
  Value Rescale(Value a) const { return a; }
  Value Align(Value a, int) const { return a; }
  Value Constant(double v, Value) const { return v; }
  int Level(Value) const { return 0; }
};

// sum_k coeffs[k] x^k with a power tree:
//   x^(2^j)  = rescale(x^(2^(j-1)) * x^(2^(j-1)))
//   x^k      = rescale(x^(2^j) * x^(k - 2^j))   with 2^j the largest power < k
//   term_k   = rescale(mul_plain(x^k, coeffs[k]))
// then all terms are aligned to the lowest level, summed in order k = 1..d,
// and coeffs[0] is added. Every coefficient is used, zeros included, so the
// level consumption depends on the degree only.
template <class Ops>
typename Ops::Value PolyEvalWith(const Ops& ops, const typename Ops::Value& x,
                                 std::span<const double> coeffs) {
  using Value = typename Ops::Value;
  if (coeffs.empty()) throw InvalidArgument("PolyEval: no coefficients");
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (d == 0) return ops.Constant(coeffs[0], x);
  std::vector<Value> powers;
  powers.reserve(d + 1);
  powers.push_back(x);  // placeholder for x^0, never read
  powers.push_back(x);
  for (int k = 2; k <= d; ++k) {
    int j = 1;
    while (2 * j < k) j *= 2;
    const Value& a = powers[j];
    const Value& b = powers[k - j];
    const int level = std::min(ops.Level(a), ops.Level(b));
    powers.push_back(ops.Rescale(ops.Mul(ops.Align(a, level), ops.Align(b, level))));
  }
  std::vector<Value> terms;
  terms.reserve(d);
  int target = 0;
  for (int k = 1; k <= d; ++k) {
    terms.push_back(ops.Rescale(ops.MulPlain(powers[k], coeffs[k])));
    target = k == 1 ? ops.Level(terms.back()) : std::min(target, ops.Level(terms.back()));
  }
  Value acc = ops.Align(terms[0], target);
  for (int k = 1; k < d; ++k) acc = ops.Add(acc, ops.Align(terms[k], target));
  return ops.AddPlain(acc, coeffs[0]);
}

// Encrypted evaluation. LevelExhausted is rethrown with a poly_eval frame.
CipherValue PolyEval(const Evaluator& ev, const CipherValue& x, std::span<const double> coeffs);
// Plaintext evaluation with the same operation order.
double PolyEvalPlain(double x, std::span<const double> coeffs);

}  // namespace encsynth::he

#endif  // ENCSYNTH_HE_POLY_EVAL_H_
