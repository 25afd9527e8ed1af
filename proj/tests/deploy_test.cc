// Copyright 2026 The labelcrypt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "labelcrypt/deploy.h"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "labelcrypt/error.h"

namespace labelcrypt {
namespace {

struct Fixture {
  GroupParams group;
  KeyGenResult kg;
  LabeledDataset data;
  EncryptedDataset encrypted;
};

Fixture MakeFixture(int classes, std::uint64_t seed) {
  Rng rng(seed);
  const GroupParams g = GroupParams::Generate(classes);
  KeyGenResult kg = GenerateKeys(g, 3, rng);
  LabeledDataset d = GenerateBlobs(BlobSpec{classes, 40, 4, 4.0, 0.6}, rng);
  EncryptedDataset ed = EncryptDataset(kg.pk, d, rng);
  return Fixture{g, std::move(kg), std::move(d), std::move(ed)};
}

DeploymentHandle TrainedHandle(const Fixture& f, int epochs = 40) {
  TrainConfig cfg;
  cfg.epochs = epochs;
  cfg.hidden = 8;
  cfg.init_scale = 0.5;
  cfg.batch_size = 16;
  cfg.seed = 1;
  return DeploymentHandle(Train(f.encrypted, cfg).model, f.kg.pk,
                          f.data.num_classes);
}

TEST(DeployTest, ZeroNonceIsPlainCodecRoundTrip) {
  const Fixture f = MakeFixture(3, 1);
  const DeploymentHandle h = TrainedHandle(f, 5);
  for (std::size_t i = 0; i < 20; ++i) {
    const auto x = f.data.features.row(i);
    const ConfusedLabel out =
        DeployPredictWithNonce(h, x, f.group.Exp(0));
    EXPECT_EQ(out, Phi(f.group, PhiInverse(f.group, Forward(h.model(), x))));
  }
}

TEST(DeployTest, ExactlyQDistinctOutputsForQThree) {
  const Fixture f = MakeFixture(3, 2);
  const DeploymentHandle h = TrainedHandle(f, 5);
  const auto x = f.data.features.row(0);
  std::set<std::vector<double>> by_nonce;
  for (std::uint64_t r = 0; r < 3; ++r) {
    by_nonce.insert(DeployPredictWithNonce(h, x, f.group.Exp(r)).values);
  }
  EXPECT_EQ(by_nonce.size(), 3u);
  Rng rng(3);
  std::set<std::vector<double>> sampled;
  for (int i = 0; i < 200; ++i) sampled.insert(DeployPredict(h, x, rng).values);
  EXPECT_EQ(sampled, by_nonce);
}

TEST(DeployTest, OutputsAreHardThreeHot) {
  const Fixture f = MakeFixture(4, 3);
  const DeploymentHandle h = TrainedHandle(f, 5);
  Rng rng(4);
  for (std::size_t i = 0; i < 30; ++i) {
    const ConfusedLabel v = DeployPredict(h, f.data.features.row(i), rng);
    ASSERT_EQ(v.size(), 3 * f.group.q());
    double total = 0;
    for (double e : v.values) {
      ASSERT_TRUE(e == 0.0 || e == 1.0);
      total += e;
    }
    ASSERT_EQ(total, 3.0);
  }
}

TEST(DeployTest, DecryptionIsStableAcrossCalls) {
  const Fixture f = MakeFixture(4, 4);
  const DeploymentHandle h = TrainedHandle(f);
  Rng rng(5);
  for (std::size_t i = 0; i < 20; ++i) {
    const auto x = f.data.features.row(i);
    for (const SecretKey& sk : f.kg.keys) {
      const std::optional<int> first =
          UserDecrypt(h.encoding(), sk, DeployPredict(h, x, rng).values);
      for (int rep = 0; rep < 10; ++rep) {
        ASSERT_EQ(UserDecrypt(h.encoding(), sk, DeployPredict(h, x, rng).values),
                  first);
      }
    }
  }
}

TEST(DeployTest, CorrectKeyRecoversTheModelsOwnDecision) {
  const Fixture f = MakeFixture(4, 5);
  const DeploymentHandle h = TrainedHandle(f);
  Rng rng(6);
  const SecretKey& sk = f.kg.keys[1];
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    const auto x = f.data.features.row(i);
    const Ciphertext raw = PhiInverse(f.group, Forward(h.model(), x));
    const std::optional<int> direct =
        DecodeLabel(h.encoding(), Decrypt(f.group, sk, raw));
    ASSERT_EQ(UserDecrypt(h.encoding(), sk, DeployPredict(h, x, rng).values),
              direct);
  }
}

TEST(DeployTest, EmissionsAreUniformOverRerandomizations) {
  const Fixture f = MakeFixture(5, 6);
  const DeploymentHandle h = TrainedHandle(f, 5);
  Rng rng(7);
  const auto x = f.data.features.row(3);
  std::map<std::vector<double>, int> counts;
  constexpr int kCalls = 5000;
  for (int i = 0; i < kCalls; ++i) ++counts[DeployPredict(h, x, rng).values];
  ASSERT_EQ(counts.size(), f.group.q());
  const double expected = static_cast<double>(kCalls) / f.group.q();
  double stat = 0;
  for (const auto& [v, c] : counts) {
    stat += (c - expected) * (c - expected) / expected;
  }
  const boost::math::chi_squared dist(static_cast<double>(f.group.q() - 1));
  EXPECT_LT(stat, boost::math::quantile(complement(dist, 0.001)));
}

TEST(DeployTest, BypassingTheModelDecryptsToTheLabel) {
  const Fixture f = MakeFixture(4, 7);
  Rng rng(8);
  const LabelEncoding enc(f.group, 4);
  for (int y = 0; y < 4; ++y) {
    const ConfusedLabel v =
        Phi(f.group, Encrypt(f.kg.pk, EncodeLabel(enc, y), rng));
    for (const SecretKey& sk : f.kg.keys) {
      EXPECT_EQ(UserDecrypt(enc, sk, v.values), std::optional<int>(y));
    }
  }
}

TEST(DeployTest, WrongKeyMisreadsEveryNonzeroNonce) {
  const Fixture f = MakeFixture(5, 8);
  Rng rng(9);
  const LabelEncoding enc(f.group, 5);
  for (int i = 0; i < 200; ++i) {
    const SecretKey wrong = SampleIncorrectKey(f.kg.pk, rng);
    const int y = static_cast<int>(i % 5);
    const Exponent r = SampleExponent(f.group, rng, /*nonzero=*/true);
    const Ciphertext c = EncryptWithNonce(f.kg.pk, EncodeLabel(enc, y), r);
    EXPECT_NE(UserDecrypt(enc, wrong, Phi(f.group, c).values),
              std::optional<int>(y));
  }
}

TEST(DeployTest, MemorizedTinySetIsPerfect) {
  Rng rng(10);
  const GroupParams g = GroupParams::Generate(4);
  const KeyGenResult kg = GenerateKeys(g, 2, rng);
  LabeledDataset d;
  d.num_classes = 4;
  d.features = Matrix(0, 2);
  const std::vector<std::vector<double>> xs = {{3, 0}, {0, 3}, {-3, 0}, {0, -3}};
  for (const auto& x : xs) d.features.AppendRow(x);
  d.labels = {0, 1, 2, 3};
  TrainConfig cfg;
  cfg.epochs = 400;
  cfg.batch_size = 4;
  cfg.learning_rate = 0.5;
  const DeploymentHandle h(Train(EncryptDataset(kg.pk, d, rng), cfg).model,
                           kg.pk, 4);
  for (const SecretKey& sk : kg.keys) EXPECT_EQ(Evaluate(h, d, sk, rng), 1.0);
}

TEST(DeployTest, RandomModelIsAtChance) {
  const Fixture f = MakeFixture(5, 9);
  Rng rng(11);
  double total = 0;
  constexpr int kModels = 40;
  for (int m = 0; m < kModels; ++m) {
    const DeploymentHandle h(
        InitModel(f.data.dim(), 0, 3, f.group.q(), 1.0, rng), f.kg.pk, 5);
    total += Evaluate(h, f.data, f.kg.keys[0], rng);
  }
  EXPECT_NEAR(total / kModels, 0.2, 0.06);
}

TEST(DeployTest, IncorrectKeyAccuracyIsLow) {
  const Fixture f = MakeFixture(4, 10);
  const DeploymentHandle h = TrainedHandle(f);
  Rng rng(12);
  EXPECT_GE(Evaluate(h, f.data, f.kg.keys[0], rng), 0.9);
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    worst = std::max(worst,
                     Evaluate(h, f.data, SampleIncorrectKey(f.kg.pk, rng), rng));
  }
  EXPECT_LE(worst, 0.375);
}

TEST(DeployTest, HandleRejectsWrongHead) {
  const Fixture f = MakeFixture(4, 11);
  Rng rng(13);
  EXPECT_THROW(DeploymentHandle(InitModel(4, 0, 1, 4, 0.1, rng), f.kg.pk, 4),
               Error);
  EXPECT_THROW(DeploymentHandle(InitModel(4, 0, 3, 7, 0.1, rng), f.kg.pk, 4),
               Error);
}

TEST(DeployTest, UserDecryptChecksLength) {
  const Fixture f = MakeFixture(4, 12);
  const LabelEncoding enc(f.group, 4);
  const std::vector<double> v(7, 0.0);
  EXPECT_THROW(UserDecrypt(enc, f.kg.keys[0], v), Error);
}

}  // namespace
}  // namespace labelcrypt
