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

#include "labelcrypt/group.h"

#include <bit>
#include <string>

#include "labelcrypt/error.h"

namespace labelcrypt {
namespace {

// Search windows for parameter generation. Prime gaps and the smallest k
// with k*q+1 prime are tiny in practice; these only guard against bugs.
constexpr std::uint64_t kPrimeSearchWindow = 100000;
constexpr std::uint64_t kCofactorSearchWindow = 1 << 20;

// Keeps p*p representable for MulMod's 128-bit intermediate and leaves
// headroom in k*q+1.
constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

bool MillerRabinWitness(std::uint64_t n, std::uint64_t a, std::uint64_t d,
                        int s) {
  std::uint64_t x = PowMod(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = MulMod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

std::uint64_t MulMod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t PowMod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = MulMod(result, base, m);
    base = MulMod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Deterministic for all 64-bit inputs with this base set.
bool IsPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (MillerRabinWitness(n, a, d, s)) return false;
  }
  return true;
}

GroupParams GroupParams::Generate(std::uint64_t min_classes) {
  if (min_classes < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "need at least 2 classes, got " + std::to_string(min_classes));
  }
  std::uint64_t q = min_classes;
  while (!IsPrime(q)) {
    if (q - min_classes > kPrimeSearchWindow) {
      throw Error(ErrorCode::kParameterSearchExhausted,
                  "no prime q found near " + std::to_string(min_classes));
    }
    ++q;
  }
  if (q > kMaxGroupOrder) {
    throw Error(ErrorCode::kInvalidArgument,
                "subgroup order " + std::to_string(q) + " exceeds table limit");
  }
  std::uint64_t p = 0;
  for (std::uint64_t k = 2; k < kCofactorSearchWindow; ++k) {
    std::uint64_t candidate = k * q + 1;
    if (IsPrime(candidate)) {
      p = candidate;
      break;
    }
  }
  if (p == 0) {
    throw Error(ErrorCode::kParameterSearchExhausted,
                "no prime p = k*q+1 found for q = " + std::to_string(q));
  }
  const std::uint64_t cofactor = (p - 1) / q;
  for (std::uint64_t w = 2; w < p; ++w) {
    std::uint64_t g1 = PowMod(w, cofactor, p);
    if (g1 != 1) return GroupParams(q, p, g1);
  }
  throw Error(ErrorCode::kParameterSearchExhausted,
              "no generator found for p = " + std::to_string(p));
}

GroupParams GroupParams::FromParts(std::uint64_t q, std::uint64_t p,
                                   std::uint64_t g1) {
  if (!IsPrime(q) || !IsPrime(p)) {
    throw Error(ErrorCode::kInvalidArgument, "q and p must both be prime");
  }
  if (p >= kMaxModulus || q > kMaxGroupOrder) {
    throw Error(ErrorCode::kInvalidArgument, "parameters out of range");
  }
  if ((p - 1) % q != 0) {
    throw Error(ErrorCode::kInvalidArgument, "q must divide p - 1");
  }
  if (g1 <= 1 || g1 >= p || PowMod(g1, q, p) != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "g1 does not generate the order-q subgroup");
  }
  return GroupParams(q, p, g1);
}

GroupParams::GroupParams(std::uint64_t q, std::uint64_t p, std::uint64_t g1)
    : q_(q), p_(p), g1_(g1) {
  auto powers = std::make_shared<std::vector<std::uint64_t>>();
  auto index =
      std::make_shared<std::unordered_map<std::uint64_t, std::uint64_t>>();
  powers->reserve(q);
  index->reserve(q);
  std::uint64_t x = 1;
  for (std::uint64_t k = 0; k < q; ++k) {
    powers->push_back(x);
    index->emplace(x, k);
    x = MulMod(x, g1, p);
  }
  powers_ = std::move(powers);
  index_ = std::move(index);
}

bool GroupParams::Contains(std::uint64_t residue) const {
  return residue >= 1 && residue < p_ && index_->contains(residue);
}

bool GroupParams::Contains(GroupElement u) const {
  return Contains(u.residue);
}

GroupElement GroupParams::Element(std::uint64_t residue) const {
  if (!Contains(residue)) {
    throw Error(ErrorCode::kNotInSubgroup,
                std::to_string(residue) + " is not in the order-" +
                    std::to_string(q_) + " subgroup mod " +
                    std::to_string(p_));
  }
  return GroupElement{residue};
}

Exponent GroupParams::Exp(std::uint64_t value) const {
  if (value >= q_) {
    throw Error(ErrorCode::kInvalidArgument,
                "exponent " + std::to_string(value) + " not below q");
  }
  return Exponent{value};
}

std::uint64_t GroupParams::IndexOf(GroupElement u) const {
  auto it = index_->find(u.residue);
  if (it == index_->end()) {
    throw Error(ErrorCode::kNotInSubgroup,
                std::to_string(u.residue) + " is not in the subgroup");
  }
  return it->second;
}

GroupElement GroupParams::ElementAt(std::uint64_t k) const {
  if (k >= q_) {
    throw Error(ErrorCode::kInvalidArgument,
                "index " + std::to_string(k) + " not below q");
  }
  return GroupElement{(*powers_)[k]};
}

GroupElement GroupParams::Mul(GroupElement a, GroupElement b) const {
  return GroupElement{MulMod(a.residue, b.residue, p_)};
}

GroupElement GroupParams::Inverse(GroupElement a) const {
  // Fermat: a^(p-2) = a^-1 mod p.
  return GroupElement{PowMod(a.residue, p_ - 2, p_)};
}

GroupElement GroupParams::Div(GroupElement a, GroupElement b) const {
  return Mul(a, Inverse(b));
}

GroupElement GroupParams::Pow(GroupElement base, Exponent e) const {
  return GroupElement{PowMod(base.residue, e.value, p_)};
}

Exponent GroupParams::Add(Exponent a, Exponent b) const {
  return Exponent{(a.value + b.value) % q_};
}

Exponent GroupParams::Sub(Exponent a, Exponent b) const {
  return Exponent{(a.value + q_ - b.value) % q_};
}

Exponent GroupParams::Mul(Exponent a, Exponent b) const {
  return Exponent{MulMod(a.value, b.value, q_)};
}

Exponent SampleExponent(const GroupParams& group, Rng& rng, bool nonzero) {
  const std::uint64_t q = group.q();
  const int bits = std::bit_width(q - 1);
  const std::uint64_t mask =
      bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  for (;;) {
    std::uint64_t v = rng() & mask;
    if (v >= q) continue;
    if (nonzero && v == 0) continue;
    return Exponent{v};
  }
}

GroupElement SampleElement(const GroupParams& group, Rng& rng) {
  return group.GeneratorPow(SampleExponent(group, rng));
}

}  // namespace labelcrypt
