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

#include "labelcrypt/deploy.h"

#include <string>

#include "labelcrypt/error.h"

namespace labelcrypt {
namespace {

ModelParams CheckedModel(ModelParams model, const PublicKey& pk) {
  if (model.blocks != kCiphertextBlocks || model.block_width != pk.group.q()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "model head is " + std::to_string(model.blocks) + "x" +
                    std::to_string(model.block_width) + ", expected 3x" +
                    std::to_string(pk.group.q()));
  }
  return model;
}

double Accuracy(std::size_t hits, std::size_t total) {
  return total == 0 ? 0.0
                    : static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

DeploymentHandle::DeploymentHandle(ModelParams model, PublicKey pk,
                                   int num_classes)
    : model_(CheckedModel(std::move(model), pk)),
      pk_(std::move(pk)),
      encoding_(pk_.group, num_classes) {}

ConfusedLabel DeployPredictWithNonce(const DeploymentHandle& handle,
                                     std::span<const double> x, Exponent r) {
  const GroupParams& group = handle.pk().group;
  const std::vector<double> probs = Forward(handle.model(), x);
  const Ciphertext c = PhiInverse(group, probs);
  return Phi(group, RerandomizeWithNonce(handle.pk(), c, r));
}

ConfusedLabel DeployPredict(const DeploymentHandle& handle,
                            std::span<const double> x, Rng& rng) {
  return DeployPredictWithNonce(handle, x,
                                SampleExponent(handle.pk().group, rng));
}

std::uint64_t DecryptToIndex(const GroupParams& group, const SecretKey& sk,
                             std::span<const double> v) {
  return group.IndexOf(Decrypt(group, sk, PhiInverse(group, v)));
}

std::optional<int> UserDecrypt(const LabelEncoding& encoding,
                               const SecretKey& sk, std::span<const double> v) {
  const GroupParams& group = encoding.group();
  return DecodeLabel(encoding, Decrypt(group, sk, PhiInverse(group, v)));
}

double Evaluate(const DeploymentHandle& handle, const LabeledDataset& dataset,
                const SecretKey& sk, Rng& rng) {
  if (dataset.dim() != handle.model().input_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dataset width does not match the model input");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const ConfusedLabel emitted =
        DeployPredict(handle, dataset.features.row(i), rng);
    const std::optional<int> y = UserDecrypt(handle.encoding(), sk, emitted.values);
    if (y && *y == dataset.labels[i]) ++hits;
  }
  return Accuracy(hits, dataset.size());
}

double EvaluateBaseline(const ModelParams& model,
                        const LabeledDataset& dataset) {
  if (dataset.dim() != model.input_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dataset width does not match the model input");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (PredictPlain(model, dataset.features.row(i)) == dataset.labels[i]) {
      ++hits;
    }
  }
  return Accuracy(hits, dataset.size());
}

}  // namespace labelcrypt
