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

#ifndef ENCSYNTH_HE_Z_UPDATE_H_
#define ENCSYNTH_HE_Z_UPDATE_H_

#include "encsynth/he/evaluator.h"
#include "encsynth/he/exp_approx.h"

namespace encsynth::he {

enum class Successor { kCipher, kAbsorbing };

// Levels each operand must hold for EncryptedZUpdate.
struct ZUpdateNeeds {
  int factor;
  int z_x;
  int z_next;  // 0 for an absorbing successor (no ciphertext)
};
ZUpdateNeeds ZUpdateRequirements(Successor successor);

// Levels the update consumes from the factor: 2 with a ciphertext successor
// (alpha product, then the product with z_next), 1 with an absorbing one.
int ZUpdateDepth(Successor successor);

// Full per-transition depth from a fresh encrypted cost: ExpDepth + ZUpdateDepth.
int DepthRequired(const ExpApproxConfig& config, Successor successor);

// Level of the updated entry for operands at the given levels.
int ZUpdateResultLevel(Successor successor, int factor, int z_x, int z_next);

// (1 - alpha) z_x + alpha factor z_next as
//   t      = rescale(mul_plain(factor, alpha))
//   prod   = rescale(mul(align(t), align(z_next)))          [t when absorbing]
//   term   = rescale(mul_plain(z_x, 1 - alpha))
//   result = align(term) + align(prod)
// `z_next` null means the successor is absorbing (Z = 1 in the clear).
CipherValue EncryptedZUpdate(const Evaluator& ev, const CipherValue& z_x,
                             const CipherValue* z_next, const CipherValue& factor,
                             double alpha);

}  // namespace encsynth::he

#endif  // ENCSYNTH_HE_Z_UPDATE_H_
