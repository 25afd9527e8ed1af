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

#ifndef LABELCRYPT_GROUP_H_
#define LABELCRYPT_GROUP_H_

#include <compare>
#include <cstdint>
#include <memory>
#include <random>
#include <unordered_map>
#include <vector>

namespace labelcrypt {

// Every randomized operation takes one of these by reference. Seeding is the
// caller's job; identical seeds give identical transcripts.
using Rng = std::mt19937_64;

// A member of the order-q subgroup of (Z/pZ)^*. Construct through
// GroupParams::Element() to get membership checked.
struct GroupElement {
  std::uint64_t residue = 1;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

// An exponent in Z_q.
struct Exponent {
  std::uint64_t value = 0;

  friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

// Largest subgroup order we are willing to build a discrete-log table for.
inline constexpr std::uint64_t kMaxGroupOrder = std::uint64_t{1} << 22;

bool IsPrime(std::uint64_t n);

// Overflow-free modular helpers; valid for any modulus below 2^64.
std::uint64_t MulMod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t PowMod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// The prime-order cyclic group everything else runs in: the order-q subgroup
// of the multiplicative group mod p, generated by g1, together with the
// canonical bijection g1^k <-> k used by the label codec.
//
// Immutable after construction. Copies share the index table.
class GroupParams {
 public:
  // q = smallest prime >= min_classes, p = smallest prime k*q+1 with k >= 2,
  // g1 = w^((p-1)/q) for the smallest w >= 2 giving g1 != 1.
  static GroupParams Generate(std::uint64_t min_classes);

  // Validates and adopts an explicit (q, p, g1) triple.
  static GroupParams FromParts(std::uint64_t q, std::uint64_t p,
                               std::uint64_t g1);

  std::uint64_t q() const { return q_; }
  std::uint64_t p() const { return p_; }
  GroupElement generator() const { return GroupElement{g1_}; }

  bool Contains(GroupElement u) const;
  bool Contains(std::uint64_t residue) const;

  // Checked constructors.
  GroupElement Element(std::uint64_t residue) const;
  Exponent Exp(std::uint64_t value) const;

  // Discrete log base g1 via the precomputed table.
  std::uint64_t IndexOf(GroupElement u) const;
  // g1^k for k in [0, q).
  GroupElement ElementAt(std::uint64_t k) const;

  GroupElement Mul(GroupElement a, GroupElement b) const;
  GroupElement Div(GroupElement a, GroupElement b) const;
  GroupElement Inverse(GroupElement a) const;
  GroupElement Pow(GroupElement base, Exponent e) const;
  GroupElement GeneratorPow(Exponent e) const { return ElementAt(e.value); }

  Exponent Add(Exponent a, Exponent b) const;
  Exponent Sub(Exponent a, Exponent b) const;
  Exponent Mul(Exponent a, Exponent b) const;

  friend bool operator==(const GroupParams& a, const GroupParams& b) {
    return a.q_ == b.q_ && a.p_ == b.p_ && a.g1_ == b.g1_;
  }

 private:
  GroupParams(std::uint64_t q, std::uint64_t p, std::uint64_t g1);

  std::uint64_t q_;
  std::uint64_t p_;
  std::uint64_t g1_;
  // powers_[k] = g1^k; index_ is its inverse.
  std::shared_ptr<const std::vector<std::uint64_t>> powers_;
  std::shared_ptr<const std::unordered_map<std::uint64_t, std::uint64_t>>
      index_;
};

// Uniform over Z_q, or Z_q \ {0} when `nonzero`, by rejection sampling on
// masked 64-bit draws.
Exponent SampleExponent(const GroupParams& group, Rng& rng,
                        bool nonzero = false);

// Uniform over the subgroup.
GroupElement SampleElement(const GroupParams& group, Rng& rng);

}  // namespace labelcrypt

#endif  // LABELCRYPT_GROUP_H_
