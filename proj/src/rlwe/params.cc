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

#include "encsynth/rlwe/params.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "encsynth/common/error.h"
#include "encsynth/common/rng.h"

namespace encsynth::rlwe {
namespace {

// Interior primes q_1..q_L. Picked by a
// branch-and-bound search over the NTT-friendly primes closest to Delta that
// minimizes max_l |Delta_l - Delta| / Delta along the rescaling chain.
class InteriorSearch {
 public:
  InteriorSearch(long double delta, u64 m, int levels) : delta_(delta), levels_(levels) {
    const u64 center = static_cast<u64>(delta);
    for (u64 k = 0; pool_.size() < kPoolSize && k * m < center; ++k) {
      for (u64 cand : {CongruentAbove(center, m, k), CongruentBelow(center, m, k)}) {
        if (cand > 1 && IsPrime(cand) &&
            std::find(pool_.begin(), pool_.end(), cand) == pool_.end()) {
          pool_.push_back(cand);
        }
      }
    }
    if (static_cast<int>(pool_.size()) < levels) {
      throw InvalidArgument("not enough NTT-friendly primes near the scale");
    }
  }

  // Tries top-level scales Delta + t 2^(log2 Delta - 24), |t| <= 24, since
  // with Delta_L = Delta exactly the first rescale is off by the distance
  // from Delta to the nearest usable prime.
  void Run() {
    best_error_ = 1.0L;
    const long double step = std::ldexp(delta_, -24);
    for (int t = -24; t <= 24; ++t) {
      const long double top = delta_ + t * step;
      std::vector<u64> chosen;
      const long double before = best_error_;
      Search(top, std::abs(top - delta_) / delta_, chosen);
      if (best_error_ < before) best_top_ = top;
    }
    std::reverse(best_.begin(), best_.end());  // searched from the top level down
  }

  const std::vector<u64>& primes() const { return best_; }
  long double top_scale() const { return best_top_; }

 private:
  static constexpr std::size_t kPoolSize = 48;

  static u64 CongruentAbove(u64 center, u64 m, u64 k) { return (center / m + 1 + k) * m + 1; }
  static u64 CongruentBelow(u64 center, u64 m, u64 k) {
    return center / m >= k ? (center / m - k) * m + 1 : 0;
  }

  void Search(long double scale, long double worst, std::vector<u64>& chosen) {
    if (static_cast<int>(chosen.size()) == levels_) {
      if (worst < best_error_) {
        best_error_ = worst;
        best_ = chosen;
      }
      return;
    }
    const long double square = scale * scale;
    std::vector<std::pair<long double, u64>> options;
    for (u64 q : pool_) {
      if (std::find(chosen.begin(), chosen.end(), q) != chosen.end()) continue;
      const long double next = square / static_cast<long double>(q);
      const long double error = std::max(worst, std::abs(next - delta_) / delta_);
      if (error < best_error_) options.emplace_back(error, q);
    }
    std::sort(options.begin(), options.end());
    for (const auto& [error, q] : options) {
      if (error >= best_error_) break;
      chosen.push_back(q);
      Search(square / static_cast<long double>(q), error, chosen);
      chosen.pop_back();
    }
  }

  long double delta_;
  int levels_;
  std::vector<u64> pool_;
  long double best_error_ = 1.0L;
  std::vector<u64> best_;
  long double best_top_ = 0.0L;
};

}  // namespace

RlweParams MakeRlweParams(const he::HeProfile& profile) {
  profile.Validate();
  if (profile.ring_dimension < (1 << 10) || profile.ring_dimension > (1 << 14)) {
    throw InvalidArgument("RLWE ring dimension must lie in [2^10, 2^14], got " +
                          std::to_string(profile.ring_dimension));
  }
  const int outer_min = std::min(profile.chain_bits.front(), profile.chain_bits.back());
  if (outer_min < profile.log2_scale + 10 || std::max(profile.chain_bits.front(),
                                                       profile.chain_bits.back()) > 60) {
    throw InvalidArgument("RLWE outer primes need between log2_scale + 10 and 60 bits");
  }
  RlweParams p;
  p.profile = profile;
  p.n = static_cast<std::size_t>(profile.ring_dimension);
  const u64 m = 2 * p.n;
  const int levels = profile.usable_levels();

  std::vector<u64> used;
  const u64 q0 = CongruentPrimeBelow(u64{1} << profile.chain_bits.front(), m, used);
  used.push_back(q0);
  p.special = CongruentPrimeBelow(u64{1} << profile.chain_bits.back(), m, used);
  used.push_back(p.special);

  const long double delta = std::ldexp(1.0L, profile.log2_scale);
  InteriorSearch search(delta, m, levels);
  search.Run();
  const std::vector<u64>& interior = search.primes();
  p.scales.assign(levels + 1, 0.0L);
  p.scales[levels] = search.top_scale();
  for (int l = levels; l >= 1; --l) {
    p.scales[l - 1] = p.scales[l] * p.scales[l] / static_cast<long double>(interior[l - 1]);
  }
  p.chain.push_back(q0);
  for (u64 q : interior) p.chain.push_back(q);

  std::uint64_t h = Mix64(profile.Hash());
  h = Mix64(h ^ p.n);
  for (u64 q : p.chain) h = Mix64(h ^ q);
  p.hash = Mix64(h ^ p.special);
  return p;
}

RlweContext::RlweContext(RlweParams params) : params_(std::move(params)) {
  std::vector<u64> all = params_.chain;
  all.push_back(params_.special);
  for (u64 q : all) {
    moduli_.emplace_back(q);
    ntt_.emplace_back(moduli_.back(), params_.n);
  }
}

std::shared_ptr<const RlweContext> MakeContext(const he::HeProfile& profile) {
  return std::make_shared<const RlweContext>(MakeRlweParams(profile));
}

}  // namespace encsynth::rlwe
