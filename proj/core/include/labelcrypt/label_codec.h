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

#ifndef LABELCRYPT_LABEL_CODEC_H_
#define LABELCRYPT_LABEL_CODEC_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "labelcrypt/group.h"
#include "labelcrypt/pke.h"

namespace labelcrypt {

// Maps the 0-based class labels {0, ..., z-1} into the group as g1^y.
class LabelEncoding {
 public:
  // Throws kTooManyClasses if z > q, kInvalidArgument if z < 2.
  LabelEncoding(GroupParams group, int num_classes);

  const GroupParams& group() const { return group_; }
  int num_classes() const { return num_classes_; }

 private:
  GroupParams group_;
  int num_classes_;
};

// A 3q-wide vector made of three q-wide blocks, one per ciphertext
// component. Training targets are 3-hot; model outputs hold probabilities.
struct ConfusedLabel {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  friend bool operator==(const ConfusedLabel&, const ConfusedLabel&) = default;
};

inline constexpr int kCiphertextBlocks = 3;

// Throws kLabelOutOfRange unless 0 <= y < z.
GroupElement EncodeLabel(const LabelEncoding& encoding, int y);

// The label whose encoding is m, or nullopt when m's index is >= z (a wrong
// key or an ill-formed ciphertext).
std::optional<int> DecodeLabel(const LabelEncoding& encoding, GroupElement m);

// Indicator encoding: one-hot at IndexOf(u_i) in block i.
ConfusedLabel Phi(const GroupParams& group, const Ciphertext& c);

// Blockwise argmax, lowest index on ties. Throws kBadLength unless
// v.size() == 3q.
Ciphertext PhiInverse(const GroupParams& group, std::span<const double> v);
inline Ciphertext PhiInverse(const GroupParams& group,
                             const ConfusedLabel& v) {
  return PhiInverse(group, std::span<const double>(v.values));
}

// Argmax of v, lowest index on ties. v must be nonempty.
std::size_t ArgMax(std::span<const double> v);

}  // namespace labelcrypt

#endif  // LABELCRYPT_LABEL_CODEC_H_
