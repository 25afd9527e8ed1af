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

#ifndef LABELCRYPT_DEPLOY_H_
#define LABELCRYPT_DEPLOY_H_

#include <cstdint>
#include <optional>
#include <span>

#include "labelcrypt/classifier.h"
#include "labelcrypt/dataset.h"
#include "labelcrypt/label_codec.h"
#include "labelcrypt/pke.h"

namespace labelcrypt {

// A trained model bound to the public key it was trained under.
class DeploymentHandle {
 public:
  // Throws kDimensionMismatch unless the model head is 3 blocks of width q.
  DeploymentHandle(ModelParams model, PublicKey pk, int num_classes);

  const ModelParams& model() const { return model_; }
  const PublicKey& pk() const { return pk_; }
  const LabelEncoding& encoding() const { return encoding_; }

 private:
  ModelParams model_;
  PublicKey pk_;
  LabelEncoding encoding_;
};

// Forward pass, blockwise argmax back to a ciphertext, rerandomize, and
// re-encode as a hard 3-hot vector. Every call draws a fresh nonce.
ConfusedLabel DeployPredict(const DeploymentHandle& handle,
                            std::span<const double> x, Rng& rng);
ConfusedLabel DeployPredictWithNonce(const DeploymentHandle& handle,
                                     std::span<const double> x, Exponent r);

// Index of Dec(sk, PhiInverse(v)) in the group, regardless of z.
std::uint64_t DecryptToIndex(const GroupParams& group, const SecretKey& sk,
                             std::span<const double> v);

// The readable label, or nullopt for an out-of-range decryption.
std::optional<int> UserDecrypt(const LabelEncoding& encoding,
                               const SecretKey& sk, std::span<const double> v);

// Fraction of rows where UserDecrypt(DeployPredict(x)) == y. Out-of-range
// decryptions count as wrong.
double Evaluate(const DeploymentHandle& handle, const LabeledDataset& dataset,
                const SecretKey& sk, Rng& rng);

// Plain argmax accuracy of a single-block baseline model.
double EvaluateBaseline(const ModelParams& model, const LabeledDataset& dataset);

}  // namespace labelcrypt

#endif  // LABELCRYPT_DEPLOY_H_
