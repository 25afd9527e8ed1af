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

#ifndef LABELCRYPT_DATASET_H_
#define LABELCRYPT_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "labelcrypt/group.h"
#include "labelcrypt/label_codec.h"
#include "labelcrypt/pke.h"

namespace labelcrypt {

// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<double> row(std::size_t i) {
    return {data.data() + i * cols, cols};
  }
  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data[i * cols + j];
  }

  void AppendRow(std::span<const double> values);

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct LabeledDataset {
  Matrix features;
  std::vector<int> labels;  // 0-based
  int num_classes = 0;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return features.cols; }

  // Throws kInvalidArgument on empty data, row/label count mismatch, or
  // labels outside [0, num_classes).
  void Validate() const;
};

// A probe input paired with an ill-formed ciphertext. The arbitrator keeps
// the per-key decryptions; the model only ever sees (probe, Phi(fake)).
struct VerificationRecord {
  std::vector<double> probe;
  Ciphertext fake;
  std::map<int, std::uint64_t> expected;  // key id -> IndexOf(Dec(sk, fake))
  int copies = 0;
};

struct EncryptedDataset {
  Matrix features;
  std::vector<Ciphertext> labels;
  PublicKey pk;
  int num_classes = 0;
  std::vector<VerificationRecord> records;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return features.cols; }
  // Rows that came from the plaintext dataset; injected copies follow them.
  std::size_t original_size() const;
};

// Encrypts each distinct label once (in order of first appearance) and
// reuses that ciphertext for every row carrying the label.
EncryptedDataset EncryptDataset(const PublicKey& pk,
                                const LabeledDataset& dataset, Rng& rng);

// Builds a record around a fresh Fake() ciphertext. Needs at least two keys.
VerificationRecord MakeVerificationRecord(const PublicKey& pk,
                                          std::span<const SecretKey> keys,
                                          std::vector<double> probe, Rng& rng);

// Same, around a caller-chosen ill-formed ciphertext. Throws
// kDegenerateFake if two keys decrypt it to the same message.
VerificationRecord MakeVerificationRecordFromFake(
    const PublicKey& pk, std::span<const SecretKey> keys,
    std::vector<double> probe, const Ciphertext& fake);

// A probe drawn uniformly from the per-feature [min, max] box of `features`.
std::vector<double> UniformProbe(const Matrix& features, Rng& rng);

// max(1, ceil(0.01 * n)).
int DefaultReplication(std::size_t n);

// Appends `replication` copies of (probe, fake). Throws kDimensionMismatch or
// kInvalidArgument for replication < 1.
EncryptedDataset Inject(const EncryptedDataset& dataset,
                        VerificationRecord record, int replication);

// Phi of every row's ciphertext.
std::vector<ConfusedLabel> TrainingTargets(const EncryptedDataset& dataset);

// Rows [begin, end) of a dataset, with the class count carried over.
LabeledDataset Slice(const LabeledDataset& dataset, std::size_t begin,
                     std::size_t end);

struct BlobSpec {
  int num_classes = 4;
  int per_class = 200;
  int dim = 8;
  double spacing = 3.0;
  double noise = 1.0;
};

// Isotropic Gaussian blobs, rows shuffled. Class c is centred on axis
// c mod dim at distance spacing * (1 + level/2), with the sign alternating
// per level = c / dim.
LabeledDataset GenerateBlobs(const BlobSpec& spec, Rng& rng);

}  // namespace labelcrypt

#endif  // LABELCRYPT_DATASET_H_
