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

#include "encsynth/he/z_update.h"

#include <algorithm>

namespace encsynth::he {

ZUpdateNeeds ZUpdateRequirements(Successor successor) {
  return successor == Successor::kCipher ? ZUpdateNeeds{2, 1, 1} : ZUpdateNeeds{1, 1, 0};
}

int ZUpdateDepth(Successor successor) { return ZUpdateRequirements(successor).factor; }

int DepthRequired(const ExpApproxConfig& config, Successor successor) {
  return ExpDepth(config) + ZUpdateDepth(successor);
}

int ZUpdateResultLevel(Successor successor, int factor, int z_x, int z_next) {
  if (successor == Successor::kAbsorbing) return std::min(factor - 1, z_x - 1);
  return std::min({factor - 2, z_next - 1, z_x - 1});
}

CipherValue EncryptedZUpdate(const Evaluator& ev, const CipherValue& z_x,
                             const CipherValue* z_next, const CipherValue& factor,
                             double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw PreconditionError("EncryptedZUpdate: alpha must lie in [0, 1]");
  }
  try {
    CipherValue prod = ev.Rescale(ev.MulPlain(factor, alpha));
    if (z_next != nullptr) {
      const int level = std::min(prod.level, z_next->level);
      prod = ev.Rescale(ev.Mul(ev.AlignLevels(prod, level), ev.AlignLevels(*z_next, level)));
    }
    const CipherValue term = ev.Rescale(ev.MulPlain(z_x, 1.0 - alpha));
    const int target = std::min(term.level, prod.level);
    return ev.Add(ev.AlignLevels(term, target), ev.AlignLevels(prod, target));
  } catch (LevelExhausted& e) {
    throw e.Within(z_next ? "z_update(cipher successor)" : "z_update(absorbing successor)");
  }
}

}  // namespace encsynth::he
