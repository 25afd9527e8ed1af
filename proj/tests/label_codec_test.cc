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


#include "labelcrypt/label_codec.h"

#include <cstdint>
#include <optional>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "labelcrypt/error.h"
#include "labelcrypt/pke.h"

namespace labelcrypt {
namespace {

using ::testing::ElementsAre;

class CodecTest : public ::testing::Test {
 protected:
  GroupParams g_ = GroupParams::FromParts(3, 7, 2);
  Ciphertext C(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    return Ciphertext{g_.Element(a), g_.Element(b), g_.Element(c)};
  }
};

TEST_F(CodecTest, EncodeLabel) {
  const LabelEncoding enc(g_, 3);
  EXPECT_EQ(EncodeLabel(enc, 0).residue, 1u);
  EXPECT_EQ(EncodeLabel(enc, 1).residue, 2u);
  EXPECT_EQ(EncodeLabel(enc, 2).residue, 4u);
  try {
    EncodeLabel(enc, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLabelOutOfRange);
  }
  EXPECT_THROW(EncodeLabel(enc, -1), Error);
}

TEST_F(CodecTest, DecodeLabel) {
  const LabelEncoding enc(g_, 2);
  EXPECT_EQ(DecodeLabel(enc, g_.Element(1)), std::optional<int>(0));
  EXPECT_EQ(DecodeLabel(enc, g_.Element(2)), std::optional<int>(1));
  EXPECT_EQ(DecodeLabel(enc, g_.Element(4)), std::nullopt);
  EXPECT_THROW(DecodeLabel(enc, GroupElement{3}), Error);
}

TEST_F(CodecTest, EncodingBounds) {
  EXPECT_THROW(LabelEncoding(g_, 1), Error);
  try {
    LabelEncoding(g_, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooManyClasses);
  }
}

TEST_F(CodecTest, PhiExamples) {
  EXPECT_THAT(Phi(g_, C(1, 1, 1)).values,
              ElementsAre(1, 0, 0, 1, 0, 0, 1, 0, 0));
  EXPECT_THAT(Phi(g_, C(2, 4, 1)).values,
              ElementsAre(0, 1, 0, 0, 0, 1, 1, 0, 0));
}

TEST_F(CodecTest, PhiInverseExamples) {
  const std::vector<double> hard = {1, 0, 0, 1, 0, 0, 1, 0, 0};
  EXPECT_EQ(PhiInverse(g_, hard), C(1, 1, 1));
  const std::vector<double> soft = {0.1, 0.7, 0.2, 0.2, 0.2,
                                    0.6, 0.8, 0.1, 0.1};
  EXPECT_EQ(PhiInverse(g_, soft), C(2, 4, 1));
  const double third = 1.0 / 3.0;
  const std::vector<double> tied = {third, third, third, 0, 1, 0, 0, 0, 1};
  EXPECT_EQ(PhiInverse(g_, tied), C(1, 2, 4));
}

TEST_F(CodecTest, PhiInverseRejectsBadLength) {
  const std::vector<double> short_v(8, 0.0);
  try {
    PhiInverse(g_, short_v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadLength);
  }
}

TEST_F(CodecTest, ExhaustiveRoundTrip) {
  int n = 0;
  for (std::uint64_t a : {1, 2, 4}) {
    for (std::uint64_t b : {1, 2, 4}) {
      for (std::uint64_t c : {1, 2, 4}) {
        const Ciphertext ct = C(a, b, c);
        const ConfusedLabel v = Phi(g_, ct);
        ASSERT_EQ(v.size(), 9u);
        double total = 0;
        for (double x : v.values) {
          ASSERT_TRUE(x == 0.0 || x == 1.0);
          total += x;
        }
        ASSERT_EQ(total, 3.0);
        ASSERT_EQ(PhiInverse(g_, v), ct);
        ++n;
      }
    }
  }
  EXPECT_EQ(n, 27);
}

TEST(CodecPropertyTest, ArgmaxInvariantUnderBlockwiseMonotoneRescaling) {
  const GroupParams g = GroupParams::Generate(11);
  Rng rng(6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> v(33);
    for (double& x : v) x = unit(rng);
    std::vector<double> w = v;
    for (int blk = 0; blk < 3; ++blk) {
      const double scale = 0.1 + 10 * unit(rng);
      const double shift = unit(rng) - 0.5;
      for (int k = 0; k < 11; ++k) {
        double& x = w[blk * 11 + k];
        x = scale * x * x * x + shift;
      }
    }
    ASSERT_EQ(PhiInverse(g, v), PhiInverse(g, w));
  }
}

TEST(CodecPropertyTest, EndToEndLabelLoop) {
  const GroupParams g = GroupParams::Generate(7);
  Rng rng(12);
  const KeyGenResult kg = GenerateKeys(g, 4, rng);
  const LabelEncoding enc(g, 6);
  for (int y = 0; y < 6; ++y) {
    for (int rep = 0; rep < 10; ++rep) {
      const Ciphertext c = Encrypt(kg.pk, EncodeLabel(enc, y), rng);
      const Ciphertext back = PhiInverse(g, Phi(g, c));
      for (const SecretKey& sk : kg.keys) {
        ASSERT_EQ(DecodeLabel(enc, Decrypt(g, sk, back)), std::optional<int>(y));
      }
    }
  }
}

TEST(ArgMaxTest, LowestIndexWinsTies) {
  const std::vector<double> v = {0.2, 0.5, 0.5, 0.1};
  EXPECT_EQ(ArgMax(v), 1u);
  const std::vector<double> flat(5, 0.0);
  EXPECT_EQ(ArgMax(flat), 0u);
}

}  // namespace
}  // namespace labelcrypt
