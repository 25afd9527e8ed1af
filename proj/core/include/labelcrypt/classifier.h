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

// A small fully connected classifier with a block-softmax head, trained by
// plain mini-batch SGD on per-block cross-entropy.
//
// The head is `blocks` independent softmaxes of `block_width` outputs each.
// Models trained on confused labels use 3 blocks of width q; the plaintext
// baseline uses a single block of width z.

#ifndef LABELCRYPT_CLASSIFIER_H_
#define LABELCRYPT_CLASSIFIER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "labelcrypt/dataset.h"
#include "labelcrypt/group.h"

namespace labelcrypt {

// y = W x + b, W stored row-major as out x in.
struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

struct ModelParams {
  std::size_t input_dim = 0;
  std::size_t hidden = 0;  // 0: linear, otherwise one ReLU hidden layer
  int blocks = 0;
  std::size_t block_width = 0;
  std::vector<DenseLayer> layers;  // 1 layer if linear, 2 otherwise

  std::size_t output_dim() const { return blocks * block_width; }
  std::size_t parameter_count() const;
  // Flat view over all weights then biases, layer by layer.
  double& parameter(std::size_t i);
  double parameter(std::size_t i) const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct TrainConfig {
  double learning_rate = 0.1;
  int epochs = 50;
  int batch_size = 32;
  std::uint64_t seed = 0;
  std::size_t hidden = 0;
  double init_scale = 0.1;

  void Validate() const;
};

struct TrainResult {
  ModelParams model;
  std::vector<double> epoch_losses;  // mean per-row loss of each epoch
};

// Weights uniform in [-init_scale, init_scale], biases zero.
ModelParams InitModel(std::size_t input_dim, std::size_t hidden, int blocks,
                      std::size_t block_width, double init_scale, Rng& rng);

// Block-softmax probabilities for one input. Throws kDimensionMismatch.
std::vector<double> Forward(const ModelParams& model, std::span<const double> x);

// Mean over blocks of -sum(target * log(pred)) within the block.
double BlockCrossEntropy(std::span<const double> pred,
                         std::span<const double> target, int blocks);

struct GradientResult {
  ModelParams gradient;  // same shape as the model
  double loss = 0.0;     // mean over the batch
};

// Analytic gradient of the mean batch loss over rows `batch` of
// (features, targets).
GradientResult ComputeGradient(const ModelParams& model, const Matrix& features,
                               const Matrix& targets,
                               std::span<const std::size_t> batch);

// Mean loss over the given rows.
double MeanLoss(const ModelParams& model, const Matrix& features,
                const Matrix& targets, std::span<const std::size_t> batch);

// SGD from `init`. Shuffles every epoch from a stream seeded with cfg.seed.
TrainResult Fit(ModelParams init, const Matrix& features, const Matrix& targets,
                const TrainConfig& cfg);

// Phi of every ciphertext, as a rows x 3q matrix.
Matrix ConfusedTargets(const EncryptedDataset& dataset);
// One-hot plaintext labels, rows x z.
Matrix OneHotTargets(const LabeledDataset& dataset);

// Fresh model (seeded with cfg.seed) fit to the confused labels.
TrainResult Train(const EncryptedDataset& dataset, const TrainConfig& cfg);
// Same architecture and schedule, single-block head on plaintext labels.
TrainResult TrainBaseline(const LabeledDataset& dataset, const TrainConfig& cfg);

// Class index by argmax of a single-block model.
int PredictPlain(const ModelParams& model, std::span<const double> x);

}  // namespace labelcrypt

#endif  // LABELCRYPT_CLASSIFIER_H_
