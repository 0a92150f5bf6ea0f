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

#include "encsynth/rlwe/encoder.h"

#include <bit>
#include <cmath>
#include <numbers>

#include "encsynth/common/error.h"

namespace encsynth::rlwe {
namespace {

void BitReversePermute(std::vector<std::complex<double>>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
}

}  // namespace

Encoder::Encoder(std::size_t n) : n_(n) {
  if (n < 4 || !std::has_single_bit(n)) throw InvalidArgument("Encoder: n must be a power of two");
  const std::size_t m = 2 * n;
  rot_group_.resize(n / 2);
  std::size_t g = 1;
  for (std::size_t j = 0; j < n / 2; ++j) {
    rot_group_[j] = g;
    g = g * 5 % m;
  }
  ksi_.resize(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    ksi_[k] = {std::cos(angle), std::sin(angle)};
  }
}

void Encoder::Embed(std::vector<std::complex<double>>& v) const {
  const std::size_t size = v.size();
  const std::size_t m = 2 * n_;
  BitReversePermute(v);
  for (std::size_t len = 2; len <= size; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t quad = len << 2;
    const std::size_t gap = m / quad;
    for (std::size_t i = 0; i < size; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::size_t idx = (rot_group_[j] % quad) * gap;
        const std::complex<double> u = v[i + j];
        const std::complex<double> w = v[i + j + half] * ksi_[idx];
        v[i + j] = u + w;
        v[i + j + half] = u - w;
      }
    }
  }
}

void Encoder::EmbedInverse(std::vector<std::complex<double>>& v) const {
  const std::size_t size = v.size();
  const std::size_t m = 2 * n_;
  for (std::size_t len = size; len >= 2; len >>= 1) {
    const std::size_t half = len >> 1;
    const std::size_t quad = len << 2;
    const std::size_t gap = m / quad;
    for (std::size_t i = 0; i < size; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::size_t idx = (quad - (rot_group_[j] % quad)) * gap;
        const std::complex<double> u = v[i + j] + v[i + j + half];
        const std::complex<double> w = (v[i + j] - v[i + j + half]) * ksi_[idx];
        v[i + j] = u;
        v[i + j + half] = w;
      }
    }
  }
  BitReversePermute(v);
  for (auto& x : v) x /= static_cast<double>(size);
}

std::vector<long double> Encoder::Encode(std::span<const double> values,
                                         long double scale) const {
  const std::size_t h = slots();
  if (values.size() > h) throw InvalidArgument("Encoder: more values than slots");
  std::vector<std::complex<double>> v(h, 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) v[i] = values[i];
  EmbedInverse(v);
  std::vector<long double> coeffs(n_);
  for (std::size_t i = 0; i < h; ++i) {
    coeffs[i] = std::round(static_cast<long double>(v[i].real()) * scale);
    coeffs[i + h] = std::round(static_cast<long double>(v[i].imag()) * scale);
  }
  return coeffs;
}

std::vector<double> Encoder::Decode(std::span<const long double> coeffs,
                                    long double scale) const {
  const std::size_t h = slots();
  std::vector<std::complex<double>> v(h);
  for (std::size_t i = 0; i < h; ++i) {
    v[i] = {static_cast<double>(coeffs[i] / scale), static_cast<double>(coeffs[i + h] / scale)};
  }
  Embed(v);
  std::vector<double> out(h);
  for (std::size_t i = 0; i < h; ++i) out[i] = v[i].real();
  return out;
}

std::vector<std::complex<double>> Encoder::EvaluateNaive(
    std::span<const long double> coeffs) const {
  const std::size_t m = 2 * n_;
  std::vector<std::complex<double>> out(slots());
  for (std::size_t j = 0; j < slots(); ++j) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      acc += static_cast<double>(coeffs[k]) * ksi_[(rot_group_[j] * k) % m];
    }
    out[j] = acc;
  }
  return out;
}

}  // namespace encsynth::rlwe
