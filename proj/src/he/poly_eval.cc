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

#include "encsynth/he/poly_eval.h"

namespace encsynth::he {

int PowerDepth(int k) {
  int depth = 0;
  while ((1 << depth) < k) ++depth;
  return depth;
}

int PolyDepth(int degree) {
  if (degree < 0) throw InvalidArgument("PolyDepth: negative degree");
  return degree == 0 ? 0 : PowerDepth(degree) + 1;
}

CipherValue PolyEval(const Evaluator& ev, const CipherValue& x, std::span<const double> coeffs) {
  try {
    return PolyEvalWith(CipherOps{ev}, x, coeffs);
  } catch (LevelExhausted& e) {
    throw e.Within("poly_eval(degree " + std::to_string(coeffs.size() - 1) + ")");
  }
}

double PolyEvalPlain(double x, std::span<const double> coeffs) {
  return PolyEvalWith(PlainOps{}, x, coeffs);
}

}  // namespace encsynth::he
