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

// A Cramer-Shoup-lite public-key scheme with one public key and many
// secret keys.
//
//   Gen:  t <- Z_q^*, g2 = g1^t, (a1, b1) <- Z_q^2, h = g1^a1 g2^b1,
//         b_j distinct, a_j = a1 + (b1 - b_j) t.
//   Enc:  (g1^r, g2^r, h^r m).
//   Dec:  u3 / (u1^a u2^b).
//   Fake: (g1^r1, g2^r2, u3) with r1 != r2; every secret key decrypts it
//         to a different message, which is what makes leaked keys traceable.
//
// Every well-formed encryption of m decrypts to m under every issued key,
// and Rerandomize() preserves the per-key decryption of any ciphertext.

#ifndef LABELCRYPT_PKE_H_
#define LABELCRYPT_PKE_H_

#include <compare>
#include <cstdint>
#include <vector>

#include "labelcrypt/group.h"

namespace labelcrypt {

struct PublicKey {
  GroupParams group;
  GroupElement g2;
  GroupElement h;

  GroupElement g1() const { return group.generator(); }
};

struct SecretKey {
  int id = 0;  // 1-based, in issuance order
  Exponent a;
  Exponent b;

  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

// The arbitrator's trapdoor. Gen would normally discard t; keeping it is
// what allows new keys to be issued later without touching pk.
struct AuthorityState {
  Exponent t;
  Exponent a1;
  Exponent b1;
  std::vector<Exponent> issued_b;  // issued_b[j-1] belongs to key j

  int issued_count() const { return static_cast<int>(issued_b.size()); }
};

struct Ciphertext {
  GroupElement u1;
  GroupElement u2;
  GroupElement u3;

  friend auto operator<=>(const Ciphertext&, const Ciphertext&) = default;
};

struct KeyGenResult {
  PublicKey pk;
  std::vector<SecretKey> keys;
  AuthorityState authority;
};

// Throws kTooManyKeys when num_keys > q. (a1, b1) is resampled until
// h != 1, since h = 1 would leave u3 = m in the clear.
KeyGenResult GenerateKeys(const GroupParams& group, int num_keys, Rng& rng);

// Deterministic building blocks, mostly for reproducing worked examples.
PublicKey MakePublicKey(const GroupParams& group, Exponent t, Exponent a1,
                        Exponent b1);
SecretKey DeriveKey(const GroupParams& group, const AuthorityState& authority,
                    Exponent b, int id);

Ciphertext Encrypt(const PublicKey& pk, GroupElement m, Rng& rng);
Ciphertext EncryptWithNonce(const PublicKey& pk, GroupElement m, Exponent r);

GroupElement Decrypt(const GroupParams& group, const SecretKey& sk,
                     const Ciphertext& c);

// Ill-formed ciphertext. u3 is uniform over the subgroup.
Ciphertext Fake(const PublicKey& pk, Rng& rng);
Ciphertext FakeWithNonces(const PublicKey& pk, Exponent r1, Exponent r2,
                          GroupElement u3);

// Multiplies in a fresh encryption of the identity: (g1^r u1, g2^r u2, h^r u3).
Ciphertext Rerandomize(const PublicKey& pk, const Ciphertext& c, Rng& rng);
Ciphertext RerandomizeWithNonce(const PublicKey& pk, const Ciphertext& c,
                                Exponent r);

// Issues key number issued_count()+1 with a fresh b. Throws
// kKeySpaceExhausted once all q values of b are taken.
SecretKey AddUser(const PublicKey& pk, AuthorityState& authority, Rng& rng);

// g1^a g2^b == h.
bool KeyMatchesPublicKey(const PublicKey& pk, const SecretKey& sk);

// dlog_g1(u1) == dlog_g2(u2); needs t to decide.
bool IsWellFormed(const GroupParams& group, const AuthorityState& authority,
                  const Ciphertext& c);

// A uniformly random (a, b) that does NOT satisfy g1^a g2^b = h. Stands in
// for a guessed or forged key in experiments.
SecretKey SampleIncorrectKey(const PublicKey& pk, Rng& rng);

void CheckCiphertext(const GroupParams& group, const Ciphertext& c);

}  // namespace labelcrypt

#endif  // LABELCRYPT_PKE_H_
