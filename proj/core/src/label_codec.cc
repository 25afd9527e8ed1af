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

#include <string>

#include "labelcrypt/error.h"

namespace labelcrypt {

LabelEncoding::LabelEncoding(GroupParams group, int num_classes)
    : group_(std::move(group)), num_classes_(num_classes) {
  if (num_classes_ < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "need at least 2 classes, got " + std::to_string(num_classes));
  }
  if (static_cast<std::uint64_t>(num_classes_) > group_.q()) {
    throw Error(ErrorCode::kTooManyClasses,
                std::to_string(num_classes) + " classes do not fit q = " +
                    std::to_string(group_.q()));
  }
}

GroupElement EncodeLabel(const LabelEncoding& encoding, int y) {
  if (y < 0 || y >= encoding.num_classes()) {
    throw Error(ErrorCode::kLabelOutOfRange,
                "label " + std::to_string(y) + " outside [0, " +
                    std::to_string(encoding.num_classes()) + ")");
  }
  return encoding.group().ElementAt(static_cast<std::uint64_t>(y));
}

std::optional<int> DecodeLabel(const LabelEncoding& encoding, GroupElement m) {
  const std::uint64_t k = encoding.group().IndexOf(m);
  if (k >= static_cast<std::uint64_t>(encoding.num_classes())) {
    return std::nullopt;
  }
  return static_cast<int>(k);
}

ConfusedLabel Phi(const GroupParams& group, const Ciphertext& c) {
  const std::size_t q = group.q();
  ConfusedLabel out{std::vector<double>(kCiphertextBlocks * q, 0.0)};
  const GroupElement parts[kCiphertextBlocks] = {c.u1, c.u2, c.u3};
  for (int block = 0; block < kCiphertextBlocks; ++block) {
    out.values[block * q + group.IndexOf(parts[block])] = 1.0;
  }
  return out;
}

std::size_t ArgMax(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

Ciphertext PhiInverse(const GroupParams& group, std::span<const double> v) {
  const std::size_t q = group.q();
  if (v.size() != kCiphertextBlocks * q) {
    throw Error(ErrorCode::kBadLength,
                "confused label has " + std::to_string(v.size()) +
                    " entries, expected " +
                    std::to_string(kCiphertextBlocks * q));
  }
  GroupElement parts[kCiphertextBlocks];
  for (int block = 0; block < kCiphertextBlocks; ++block) {
    parts[block] = group.ElementAt(ArgMax(v.subspan(block * q, q)));
  }
  return Ciphertext{parts[0], parts[1], parts[2]};
}

}  // namespace labelcrypt
