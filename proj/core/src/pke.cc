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

#include "labelcrypt/pke.h"

#include <algorithm>
#include <string>

#include "labelcrypt/error.h"

namespace labelcrypt {
namespace {

bool IsIssued(const AuthorityState& authority, Exponent b) {
  return std::find(authority.issued_b.begin(), authority.issued_b.end(), b) !=
         authority.issued_b.end();
}

Exponent SampleFreshB(const GroupParams& group,
                      const AuthorityState& authority, Rng& rng) {
  for (;;) {
    Exponent b = SampleExponent(group, rng);
    if (!IsIssued(authority, b)) return b;
  }
}

void CheckElement(const GroupParams& group, GroupElement u, const char* what) {
  if (!group.Contains(u)) {
    throw Error(ErrorCode::kNotInSubgroup,
                std::string(what) + " = " + std::to_string(u.residue) +
                    " is not in the subgroup");
  }
}

}  // namespace

void CheckCiphertext(const GroupParams& group, const Ciphertext& c) {
  CheckElement(group, c.u1, "u1");
  CheckElement(group, c.u2, "u2");
  CheckElement(group, c.u3, "u3");
}

PublicKey MakePublicKey(const GroupParams& group, Exponent t, Exponent a1,
                        Exponent b1) {
  const GroupElement g2 = group.GeneratorPow(t);
  const GroupElement h =
      group.Mul(group.GeneratorPow(a1), group.Pow(g2, b1));
  return PublicKey{group, g2, h};
}

SecretKey DeriveKey(const GroupParams& group, const AuthorityState& authority,
                    Exponent b, int id) {
  // a = a1 + (b1 - b) t  (mod q)
  const Exponent a = group.Add(
      authority.a1, group.Mul(group.Sub(authority.b1, b), authority.t));
  return SecretKey{id, a, b};
}

KeyGenResult GenerateKeys(const GroupParams& group, int num_keys, Rng& rng) {
  if (num_keys < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one key");
  }
  if (static_cast<std::uint64_t>(num_keys) > group.q()) {
    throw Error(ErrorCode::kTooManyKeys,
                std::to_string(num_keys) + " keys requested but only q = " +
                    std::to_string(group.q()) + " distinct b values exist");
  }
  AuthorityState authority;
  authority.t = SampleExponent(group, rng, /*nonzero=*/true);
  const GroupElement g2 = group.GeneratorPow(authority.t);
  GroupElement h;
  do {
    authority.a1 = SampleExponent(group, rng);
    authority.b1 = SampleExponent(group, rng);
    h = group.Mul(group.GeneratorPow(authority.a1),
                  group.Pow(g2, authority.b1));
  } while (h.residue == 1);

  KeyGenResult result{PublicKey{group, g2, h}, {}, {}};
  authority.issued_b.push_back(authority.b1);
  result.keys.push_back(SecretKey{1, authority.a1, authority.b1});
  for (int j = 2; j <= num_keys; ++j) {
    Exponent b = SampleFreshB(group, authority, rng);
    authority.issued_b.push_back(b);
    result.keys.push_back(DeriveKey(group, authority, b, j));
  }
  result.authority = std::move(authority);
  return result;
}

Ciphertext EncryptWithNonce(const PublicKey& pk, GroupElement m, Exponent r) {
  const GroupParams& g = pk.group;
  CheckElement(g, m, "message");
  return Ciphertext{g.GeneratorPow(r), g.Pow(pk.g2, r),
                    g.Mul(g.Pow(pk.h, r), m)};
}

Ciphertext Encrypt(const PublicKey& pk, GroupElement m, Rng& rng) {
  return EncryptWithNonce(pk, m, SampleExponent(pk.group, rng));
}

GroupElement Decrypt(const GroupParams& group, const SecretKey& sk,
                     const Ciphertext& c) {
  CheckCiphertext(group, c);
  const GroupElement mask =
      group.Mul(group.Pow(c.u1, sk.a), group.Pow(c.u2, sk.b));
  return group.Div(c.u3, mask);
}

Ciphertext FakeWithNonces(const PublicKey& pk, Exponent r1, Exponent r2,
                          GroupElement u3) {
  if (r1 == r2) {
    throw Error(ErrorCode::kInvalidArgument,
                "ill-formed ciphertext needs r1 != r2");
  }
  const GroupParams& g = pk.group;
  CheckElement(g, u3, "u3");
  return Ciphertext{g.GeneratorPow(r1), g.Pow(pk.g2, r2), u3};
}

Ciphertext Fake(const PublicKey& pk, Rng& rng) {
  const GroupParams& g = pk.group;
  if (g.q() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "fake needs q >= 2");
  }
  const Exponent r1 = SampleExponent(g, rng);
  Exponent r2 = SampleExponent(g, rng);
  while (r2 == r1) r2 = SampleExponent(g, rng);
  return FakeWithNonces(pk, r1, r2, SampleElement(g, rng));
}

Ciphertext RerandomizeWithNonce(const PublicKey& pk, const Ciphertext& c,
                                Exponent r) {
  const GroupParams& g = pk.group;
  CheckCiphertext(g, c);
  return Ciphertext{g.Mul(g.GeneratorPow(r), c.u1),
                    g.Mul(g.Pow(pk.g2, r), c.u2),
                    g.Mul(g.Pow(pk.h, r), c.u3)};
}

Ciphertext Rerandomize(const PublicKey& pk, const Ciphertext& c, Rng& rng) {
  return RerandomizeWithNonce(pk, c, SampleExponent(pk.group, rng));
}

SecretKey AddUser(const PublicKey& pk, AuthorityState& authority, Rng& rng) {
  const GroupParams& g = pk.group;
  if (static_cast<std::uint64_t>(authority.issued_count()) >= g.q()) {
    throw Error(ErrorCode::kKeySpaceExhausted,
                "all " + std::to_string(g.q()) + " key slots are issued");
  }
  const Exponent b = SampleFreshB(g, authority, rng);
  authority.issued_b.push_back(b);
  return DeriveKey(g, authority, b, authority.issued_count());
}

bool KeyMatchesPublicKey(const PublicKey& pk, const SecretKey& sk) {
  const GroupParams& g = pk.group;
  return g.Mul(g.GeneratorPow(sk.a), g.Pow(pk.g2, sk.b)) == pk.h;
}

bool IsWellFormed(const GroupParams& group, const AuthorityState& authority,
                  const Ciphertext& c) {
  CheckCiphertext(group, c);
  // u2 = g2^r = g1^(r t), so index(u2) must equal index(u1) * t.
  const Exponent r{group.IndexOf(c.u1)};
  return group.IndexOf(c.u2) == group.Mul(r, authority.t).value;
}

SecretKey SampleIncorrectKey(const PublicKey& pk, Rng& rng) {
  for (;;) {
    SecretKey sk{0, SampleExponent(pk.group, rng),
                 SampleExponent(pk.group, rng)};
    if (!KeyMatchesPublicKey(pk, sk)) return sk;
  }
}

}  // namespace labelcrypt
