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

#include "labelcrypt/dataset.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "labelcrypt/error.h"

namespace labelcrypt {
namespace {

constexpr int kMaxFakeAttempts = 64;

}  // namespace

void Matrix::AppendRow(std::span<const double> values) {
  if (rows == 0 && cols == 0) cols = values.size();
  if (values.size() != cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                "row has " + std::to_string(values.size()) +
                    " values, expected " + std::to_string(cols));
  }
  data.insert(data.end(), values.begin(), values.end());
  ++rows;
}

void LabeledDataset::Validate() const {
  if (labels.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "dataset is empty");
  }
  if (features.rows != labels.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feature rows and label count differ");
  }
  for (int y : labels) {
    if (y < 0 || y >= num_classes) {
      throw Error(ErrorCode::kLabelOutOfRange,
                  "label " + std::to_string(y) + " outside [0, " +
                      std::to_string(num_classes) + ")");
    }
  }
}

std::size_t EncryptedDataset::original_size() const {
  std::size_t injected = 0;
  for (const auto& r : records) injected += static_cast<std::size_t>(r.copies);
  return size() - injected;
}

EncryptedDataset EncryptDataset(const PublicKey& pk,
                                const LabeledDataset& dataset, Rng& rng) {
  dataset.Validate();
  const LabelEncoding encoding(pk.group, dataset.num_classes);
  std::map<int, Ciphertext> cache;
  EncryptedDataset out{dataset.features, {}, pk, dataset.num_classes, {}};
  out.labels.reserve(dataset.size());
  for (int y : dataset.labels) {
    auto it = cache.find(y);
    if (it == cache.end()) {
      it = cache.emplace(y, Encrypt(pk, EncodeLabel(encoding, y), rng)).first;
    }
    out.labels.push_back(it->second);
  }
  return out;
}

VerificationRecord MakeVerificationRecordFromFake(
    const PublicKey& pk, std::span<const SecretKey> keys,
    std::vector<double> probe, const Ciphertext& fake) {
  if (keys.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "tracing needs at least two issued keys");
  }
  VerificationRecord record{std::move(probe), fake, {}, 0};
  std::set<std::uint64_t> seen;
  for (const SecretKey& sk : keys) {
    const std::uint64_t index = pk.group.IndexOf(Decrypt(pk.group, sk, fake));
    if (!seen.insert(index).second) {
      throw Error(ErrorCode::kDegenerateFake,
                  "two keys decrypt the tracing ciphertext identically");
    }
    record.expected[sk.id] = index;
  }
  return record;
}

VerificationRecord MakeVerificationRecord(const PublicKey& pk,
                                          std::span<const SecretKey> keys,
                                          std::vector<double> probe,
                                          Rng& rng) {
  for (int attempt = 0; attempt < kMaxFakeAttempts; ++attempt) {
    try {
      return MakeVerificationRecordFromFake(pk, keys, probe, Fake(pk, rng));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateFake) throw;
    }
  }
  throw Error(ErrorCode::kDegenerateFake,
              "no ill-formed ciphertext separated all keys after " +
                  std::to_string(kMaxFakeAttempts) + " attempts");
}

std::vector<double> UniformProbe(const Matrix& features, Rng& rng) {
  if (features.rows == 0) {
    throw Error(ErrorCode::kInvalidArgument, "no rows to take a range from");
  }
  std::vector<double> probe(features.cols);
  for (std::size_t j = 0; j < features.cols; ++j) {
    double lo = features(0, j);
    double hi = lo;
    for (std::size_t i = 1; i < features.rows; ++i) {
      lo = std::min(lo, features(i, j));
      hi = std::max(hi, features(i, j));
    }
    probe[j] = std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  return probe;
}

int DefaultReplication(std::size_t n) {
  return std::max(1, static_cast<int>(std::ceil(0.01 * static_cast<double>(n))));
}

EncryptedDataset Inject(const EncryptedDataset& dataset,
                        VerificationRecord record, int replication) {
  if (replication < 1) {
    throw Error(ErrorCode::kInvalidArgument, "replication must be positive");
  }
  if (record.probe.size() != dataset.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "probe has dimension " + std::to_string(record.probe.size()) +
                    ", dataset has " + std::to_string(dataset.dim()));
  }
  CheckCiphertext(dataset.pk.group, record.fake);
  EncryptedDataset out = dataset;
  for (int i = 0; i < replication; ++i) {
    out.features.AppendRow(record.probe);
    out.labels.push_back(record.fake);
  }
  record.copies = replication;
  out.records.push_back(std::move(record));
  return out;
}

std::vector<ConfusedLabel> TrainingTargets(const EncryptedDataset& dataset) {
  std::vector<ConfusedLabel> targets;
  targets.reserve(dataset.size());
  for (const Ciphertext& c : dataset.labels) {
    targets.push_back(Phi(dataset.pk.group, c));
  }
  return targets;
}

LabeledDataset Slice(const LabeledDataset& dataset, std::size_t begin,
                     std::size_t end) {
  end = std::min(end, dataset.size());
  LabeledDataset out;
  out.num_classes = dataset.num_classes;
  out.features = Matrix(0, dataset.dim());
  for (std::size_t i = begin; i < end; ++i) {
    out.features.AppendRow(dataset.features.row(i));
    out.labels.push_back(dataset.labels[i]);
  }
  return out;
}

LabeledDataset GenerateBlobs(const BlobSpec& spec, Rng& rng) {
  if (spec.num_classes < 2 || spec.per_class < 1 || spec.dim < 1 ||
      spec.noise <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "bad blob specification");
  }
  const auto n = static_cast<std::size_t>(spec.num_classes) * spec.per_class;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  LabeledDataset out;
  out.num_classes = spec.num_classes;
  out.features = Matrix(n, static_cast<std::size_t>(spec.dim));
  out.labels.resize(n);
  std::normal_distribution<double> noise(0.0, spec.noise);
  for (std::size_t slot = 0; slot < n; ++slot) {
    const std::size_t i = order[slot];
    const int c = static_cast<int>(slot) / spec.per_class;
    const int axis = c % spec.dim;
    const int level = c / spec.dim;
    const double offset =
        spec.spacing * (level % 2 == 0 ? 1.0 : -1.0) * (1.0 + level / 2);
    for (int j = 0; j < spec.dim; ++j) {
      out.features(i, j) = (j == axis ? offset : 0.0) + noise(rng);
    }
    out.labels[i] = c;
  }
  return out;
}

}  // namespace labelcrypt
