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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "encsynth/common/rng.h"
#include "encsynth/he/slot_key_holders.h"
#include "encsynth/rlwe/encoder.h"
#include "encsynth/rlwe/key_holder.h"
#include "encsynth/rlwe/modarith.h"
#include "encsynth/rlwe/ntt.h"
#include "encsynth/rlwe/params.h"
#include "encsynth/rlwe/poly.h"

namespace encsynth::rlwe {
namespace {

he::HeProfile SmallProfile() {
  he::HeProfile p = he::HeProfile::Default();
  p.ring_dimension = 1 << 12;
  return p;
}

// Keys are expensive at n = 2^12; share one set across the suite.
RlweKeyHolder& SmallKeys() {
  static RlweKeyHolder* keys = new RlweKeyHolder(SmallProfile(), 11);
  return *keys;
}

TEST(ModArithTest, BarrettMatchesDivision) {
  Rng rng = MakeRng(5);
  for (u64 q : {u64{97}, (u64{1} << 40) + 0x8001, (u64{1} << 60) - 93, (u64{1} << 61) - 1}) {
    const Modulus m(q);
    for (int i = 0; i < 10000; ++i) {
      const u64 a = rng() % q;
      const u64 b = rng() % q;
      ASSERT_EQ(m.Mul(a, b), static_cast<u64>(static_cast<u128>(a) * b % q));
    }
    ASSERT_EQ(m.Mul(q - 1, q - 1), 1u);
  }
}

TEST(ModArithTest, PrimalityAndSignedResidues) {
  EXPECT_TRUE(IsPrime(2));
  EXPECT_TRUE(IsPrime((u64{1} << 61) - 1));
  EXPECT_FALSE(IsPrime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_FALSE(IsPrime(1));
  const Modulus m(97);
  EXPECT_EQ(m.FromSigned(-1), 96u);
  EXPECT_EQ(m.FromSigned(INT64_MIN), static_cast<u64>((static_cast<__int128>(INT64_MIN) % 97 + 97) % 97));
  EXPECT_EQ(m.FromIntegral(-1e30L), m.FromIntegral(std::fmod(-1e30L, 97.0L) + 97.0L));
  EXPECT_EQ(m.Centered(96), -1);
  EXPECT_EQ(m.Mul(m.Inverse(5), 5), 1u);
}

TEST(NttTest, InverseOfForwardIsIdentity) {
  const u64 q = CongruentPrimeBelow(u64{1} << 60, 2048, {});
  const NttTables ntt(Modulus(q), 1024);
  Rng rng = MakeRng(1);
  std::vector<u64> x(1024);
  for (int trial = 0; trial < 1000; ++trial) {
    for (u64& v : x) v = rng() % q;
    std::vector<u64> y = x;
    ntt.Forward(y);
    ntt.Inverse(y);
    ASSERT_EQ(y, x);
  }
}

TEST(NttTest, ZeroMapsToZero) {
  const u64 q = CongruentPrimeBelow(u64{1} << 40, 64, {});
  const NttTables ntt(Modulus(q), 32);
  std::vector<u64> z(32, 0);
  ntt.Forward(z);
  EXPECT_EQ(z, std::vector<u64>(32, 0));
}

TEST(NttTest, OnePlusXTimesOneMinusX) {
  const u64 q = CongruentPrimeBelow(u64{1} << 30, 32, {});
  const Modulus m(q);
  const NttTables ntt(m, 16);
  std::vector<u64> a(16, 0), b(16, 0);
  a[0] = 1;
  a[1] = 1;
  b[0] = 1;
  b[1] = q - 1;
  std::vector<u64> expected(16, 0);
  expected[0] = 1;
  expected[2] = q - 1;
  EXPECT_EQ(NegacyclicProductSchoolbook(a, b, m), expected);
  ntt.Forward(a);
  ntt.Forward(b);
  for (int i = 0; i < 16; ++i) a[i] = m.Mul(a[i], b[i]);
  ntt.Inverse(a);
  EXPECT_EQ(a, expected);
}

TEST(NttTest, RejectsUnfriendlyPrime) {
  EXPECT_THROW(NttTables(Modulus(97), 64), InvalidArgument);
}

TEST(RlweParamsTest, DefaultProfileChain) {
  const RlweParams p = MakeRlweParams(he::HeProfile::Default());
  EXPECT_EQ(p.n, 16384u);
  EXPECT_EQ(p.slots(), 8192u);
  ASSERT_EQ(p.chain.size(), 5u);
  EXPECT_EQ(p.max_level(), 4);
  std::vector<u64> all = p.chain;
  all.push_back(p.special);
  for (u64 q : all) {
    EXPECT_TRUE(IsPrime(q));
    EXPECT_EQ(q % (2 * p.n), 1u);
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) EXPECT_NE(all[i], all[j]);
  }
  EXPECT_EQ(std::bit_width(p.chain[0]), 60);
  EXPECT_EQ(std::bit_width(p.special), 60);
  const long double delta = std::ldexp(1.0L, 40);
  for (long double s : p.scales) EXPECT_LE(std::abs(s - delta) / delta, 0x1p-20L);
  EXPECT_NE(p.scales[4], delta);  // 2^40 itself would put level 3 outside the band
  for (int l = 1; l <= 4; ++l) {
    EXPECT_EQ(p.scales[l - 1], p.scales[l] * p.scales[l] / static_cast<long double>(p.chain[l]));
  }
}

TEST(RlweParamsTest, RejectsOutOfRangeRing) {
  he::HeProfile p = he::HeProfile::Default();
  p.ring_dimension = 1 << 9;
  EXPECT_THROW(MakeRlweParams(p), InvalidArgument);
  p.ring_dimension = 1 << 15;
  EXPECT_THROW(MakeRlweParams(p), InvalidArgument);
}

TEST(EncoderTest, ZeroVectorDecodesToZero) {
  const Encoder enc(4096);
  const std::vector<double> zeros(2048, 0.0);
  const auto coeffs = enc.Encode(zeros, std::ldexp(1.0L, 40));
  for (long double c : coeffs) ASSERT_EQ(c, 0.0L);
  for (double v : enc.Decode(coeffs, std::ldexp(1.0L, 40))) ASSERT_EQ(v, 0.0);
}

TEST(EncoderTest, DefaultRingHasEightThousandSlots) {
  EXPECT_EQ(Encoder(1 << 14).slots(), 8192u);
}

TEST(EncoderTest, RoundTripPrecision) {
  const Encoder enc(4096);
  const long double scale = std::ldexp(1.0L, 40);
  Rng rng = MakeRng(2);
  double worst = 0.0;
  std::vector<double> v(2048);
  for (int trial = 0; trial < 1000; ++trial) {
    for (double& x : v) x = -10.0 + 20.0 * UniformUnit(rng);
    const auto back = enc.Decode(enc.Encode(v, scale), scale);
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(back[i] - v[i]));
  }
  EXPECT_LT(worst, 1e-7);
}

TEST(EncoderTest, MatchesDirectEvaluationAtTheRoots) {
  for (std::size_t n : {8u, 16u, 64u}) {
    const Encoder enc(n);
    Rng rng = MakeRng(n);
    std::vector<double> v(n / 2);
    for (double& x : v) x = -1.0 + 2.0 * UniformUnit(rng);
    const long double scale = std::ldexp(1.0L, 30);
    const auto coeffs = enc.Encode(v, scale);
    const auto slots = enc.EvaluateNaive(coeffs);
    for (std::size_t j = 0; j < v.size(); ++j) {
      EXPECT_NEAR(slots[j].real() / std::ldexp(1.0, 30), v[j], 1e-8);
      EXPECT_NEAR(slots[j].imag() / std::ldexp(1.0, 30), 0.0, 1e-8);
    }
  }
}

TEST(RlweCryptTest, RoundTripSmallVector) {
  RlweKeyHolder& kh = SmallKeys();
  const std::vector<double> v = {1.0, -2.5, 3.25, 0.0, 0.0, 0.0};
  const he::CipherValue c = kh.Encrypt(v);
  EXPECT_EQ(c.level, 4);
  EXPECT_LE(std::abs(std::exp2(c.log2_scale - 40.0) - 1.0), 0x1p-20);
  const auto back = kh.Decrypt(c);
  ASSERT_EQ(back.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(back[i], v[i], 1e-6);
}

TEST(RlweCryptTest, ZeroPlaintextDecryptsNearZero) {
  RlweKeyHolder& kh = SmallKeys();
  const std::vector<double> zeros(2048, 0.0);
  for (double v : kh.Decrypt(kh.Encrypt(zeros))) ASSERT_LT(std::abs(v), 1e-6);
}

TEST(RlweCryptTest, FreshRandomnessChangesBytesNotValue) {
  RlweKeyHolder& kh = SmallKeys();
  const he::CipherValue a = kh.EncryptScalar(0.625);
  const he::CipherValue b = kh.EncryptScalar(0.625);
  EXPECT_NE(he::SerializeCipher(a), he::SerializeCipher(b));
  EXPECT_NEAR(kh.DecryptScalar(a), kh.DecryptScalar(b), 1e-6);
}

TEST(RlweCryptTest, KeysAreDeterministicInTheSeed) {
  RlweKeyHolder& a = SmallKeys();
  RlweKeyHolder b(SmallProfile(), 11);
  EXPECT_EQ(SerializeEvalKey(a.rlwe_evaluator().context(), *a.eval_key()),
            SerializeEvalKey(b.rlwe_evaluator().context(), *b.eval_key()));
  Rng r1 = MakeRng(3);
  Rng r2 = MakeRng(3);
  const double v[1] = {1.25};
  EXPECT_EQ(he::SerializeCipher(a.EncryptWith(v, r1)), he::SerializeCipher(b.EncryptWith(v, r2)));
}

TEST(RlweCryptTest, PlaintextBound) {
  EXPECT_THROW(SmallKeys().EncryptScalar(3e6), DomainError);
}

TEST(RlweArithTest, AddOfManyPairs) {
  RlweKeyHolder& kh = SmallKeys();
  Rng rng = MakeRng(8);
  std::vector<double> a(1000), b(1000);
  for (int i = 0; i < 1000; ++i) {
    a[i] = -10.0 + 20.0 * UniformUnit(rng);
    b[i] = -10.0 + 20.0 * UniformUnit(rng);
  }
  const auto sum = kh.Decrypt(kh.evaluator().Add(kh.Encrypt(a), kh.Encrypt(b)));
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) worst = std::max(worst, std::abs(sum[i] - (a[i] + b[i])));
  EXPECT_LT(worst, 1e-5);
}

TEST(RlweArithTest, MulRelinRescale) {
  RlweKeyHolder& kh = SmallKeys();
  const he::Evaluator& ev = kh.evaluator();
  const he::CipherValue r = ev.Rescale(ev.Mul(kh.EncryptScalar(1.5), kh.EncryptScalar(2.0)));
  EXPECT_NEAR(kh.DecryptScalar(r), 3.0, 1e-4);
  EXPECT_EQ(r.level, 3);
}

TEST(RlweArithTest, MulByEncryptedOne) {
  RlweKeyHolder& kh = SmallKeys();
  const he::Evaluator& ev = kh.evaluator();
  const he::CipherValue r = ev.Rescale(ev.Mul(kh.EncryptScalar(-0.37), kh.EncryptScalar(1.0)));
  EXPECT_NEAR(kh.DecryptScalar(r), -0.37, 1e-6);
  EXPECT_EQ(r.level, 3);
}

TEST(RlweArithTest, PlainOpsAndAlignment) {
  RlweKeyHolder& kh = SmallKeys();
  const he::Evaluator& ev = kh.evaluator();
  const he::CipherValue c = kh.EncryptScalar(0.8);
  EXPECT_NEAR(kh.DecryptScalar(ev.AddPlain(c, 1.5)), 2.3, 1e-6);
  const he::CipherValue m = ev.Rescale(ev.MulPlain(c, -0.25));
  EXPECT_NEAR(kh.DecryptScalar(m), -0.2, 1e-6);
  EXPECT_EQ(m.level, 3);
  const he::CipherValue low = ev.AlignLevels(c, 1);
  EXPECT_EQ(low.level, 1);
  EXPECT_NEAR(kh.DecryptScalar(low), 0.8, 1e-6);
  EXPECT_NEAR(kh.DecryptScalar(ev.Add(ev.AlignLevels(m, 1), low)), 0.6, 1e-6);
  const he::CipherValue k = ev.ConstantLike(0.5, m);
  EXPECT_NEAR(kh.DecryptScalar(ev.Add(m, k)), 0.3, 1e-6);
}

TEST(RlweArithTest, ScaleAndLevelContracts) {
  RlweKeyHolder& kh = SmallKeys();
  const he::Evaluator& ev = kh.evaluator();
  const he::CipherValue c = kh.EncryptScalar(0.5);
  EXPECT_THROW(ev.Rescale(c), PreconditionError);
  const he::CipherValue sq = ev.Mul(c, c);
  EXPECT_THROW(ev.Add(sq, c), he::CipherMismatch);
  EXPECT_THROW(ev.AlignLevels(sq, 2), PreconditionError);
  EXPECT_THROW(ev.Add(c, ev.AlignLevels(c, 3)), he::CipherMismatch);
  he::ExactKeyHolder exact(SmallProfile());
  EXPECT_THROW(ev.Add(c, exact.EncryptScalar(0.5)), he::CipherMismatch);
}

TEST(RlweArithTest, FifthMulExhaustsTheChain) {
  RlweKeyHolder& kh = SmallKeys();
  const he::Evaluator& ev = kh.evaluator();
  he::CipherValue c = kh.EncryptScalar(1.1);
  for (int i = 0; i < 4; ++i) c = ev.Rescale(ev.Mul(c, c));
  EXPECT_EQ(c.level, 0);
  EXPECT_NEAR(kh.DecryptScalar(c), std::pow(1.1, 16), 1e-4);
  EXPECT_THROW(ev.Mul(c, c), he::LevelExhausted);
  EXPECT_THROW(ev.MulPlain(c, 0.5), he::LevelExhausted);
}

TEST(RlweSerializationTest, CiphertextRoundTrip) {
  RlweKeyHolder& kh = SmallKeys();
  const he::Evaluator& ev = kh.evaluator();
  const he::CipherValue c = ev.Rescale(ev.MulPlain(kh.EncryptScalar(0.3), 0.5));
  const Bytes bytes = he::SerializeCipher(c);
  // 2 components x 4 primes x n words plus headers.
  EXPECT_GT(bytes.size(), 2u * 4 * 4096 * 8);
  const std::string text(bytes.begin(), bytes.end());
  EXPECT_NE(text.find(kSecurityStamp), std::string::npos);
  const he::CipherValue back = ev.Deserialize(bytes);
  EXPECT_EQ(back.level, 3);
  EXPECT_EQ(he::SerializeCipher(back), bytes);
  EXPECT_NEAR(kh.DecryptScalar(back), 0.15, 1e-6);
  Bytes corrupt = bytes;
  corrupt.back() = 0xff;  // residue above its prime
  EXPECT_THROW(ev.Deserialize(corrupt), MalformedInput);
  Bytes cut(bytes.begin(), bytes.end() - 8);
  EXPECT_THROW(ev.Deserialize(cut), MalformedInput);
}

TEST(RlweSerializationTest, EvalKeyRoundTripAndParamsCheck) {
  RlweKeyHolder& kh = SmallKeys();
  const RlweContext& ctx = kh.rlwe_evaluator().context();
  const Bytes blob = SerializeEvalKey(ctx, *kh.eval_key());
  auto key = std::make_shared<const RlweEvalKey>(DeserializeEvalKey(ctx, blob));
  const RlweEvaluator server(kh.rlwe_evaluator().shared_context(), key);
  const he::CipherValue r = server.Rescale(server.Mul(kh.EncryptScalar(3.0), kh.EncryptScalar(-0.5)));
  EXPECT_NEAR(kh.DecryptScalar(r), -1.5, 1e-5);

  he::HeProfile other = SmallProfile();
  other.ring_dimension = 1 << 10;
  const auto other_ctx = MakeContext(other);
  EXPECT_THROW(DeserializeEvalKey(*other_ctx, blob), MalformedInput);
}

}  // namespace
}  // namespace encsynth::rlwe
