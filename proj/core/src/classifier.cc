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

#include "labelcrypt/classifier.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "labelcrypt/error.h"
#include "labelcrypt/label_codec.h"

namespace labelcrypt {
namespace {

DenseLayer MakeLayer(std::size_t in, std::size_t out, double scale, Rng& rng) {
  DenseLayer layer{in, out, std::vector<double>(in * out),
                   std::vector<double>(out, 0.0)};
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (double& w : layer.weights) w = dist(rng);
  return layer;
}

void Affine(const DenseLayer& layer, std::span<const double> x,
            std::span<double> y) {
  for (std::size_t o = 0; o < layer.out; ++o) {
    const double* w = layer.weights.data() + o * layer.in;
    double acc = layer.bias[o];
    for (std::size_t i = 0; i < layer.in; ++i) acc += w[i] * x[i];
    y[o] = acc;
  }
}

void BlockSoftmax(std::span<double> logits, int blocks, std::size_t width) {
  for (int b = 0; b < blocks; ++b) {
    auto block = logits.subspan(b * width, width);
    const double peak = *std::max_element(block.begin(), block.end());
    double total = 0.0;
    for (double& v : block) {
      v = std::exp(v - peak);
      total += v;
    }
    for (double& v : block) v /= total;
  }
}

// Activations kept for backprop.
struct Trace {
  std::vector<double> pre;     // hidden pre-activations (empty if linear)
  std::vector<double> hidden;  // ReLU outputs
  std::vector<double> probs;
};

Trace Run(const ModelParams& model, std::span<const double> x) {
  if (x.size() != model.input_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "input has dimension " + std::to_string(x.size()) +
                    ", model expects " + std::to_string(model.input_dim));
  }
  Trace t;
  t.probs.resize(model.output_dim());
  if (model.hidden == 0) {
    Affine(model.layers[0], x, t.probs);
  } else {
    t.pre.resize(model.hidden);
    Affine(model.layers[0], x, t.pre);
    t.hidden.resize(model.hidden);
    for (std::size_t i = 0; i < model.hidden; ++i) {
      t.hidden[i] = std::max(0.0, t.pre[i]);
    }
    Affine(model.layers[1], t.hidden, t.probs);
  }
  BlockSoftmax(t.probs, model.blocks, model.block_width);
  return t;
}

void CheckTargets(const ModelParams& model, const Matrix& features,
                  const Matrix& targets) {
  if (features.cols != model.input_dim) {
    throw Error(ErrorCode::kDimensionMismatch, "feature width != model input");
  }
  if (targets.cols != model.output_dim()) {
    throw Error(ErrorCode::kBadLength, "target width != model output");
  }
  if (targets.rows != features.rows) {
    throw Error(ErrorCode::kDimensionMismatch, "feature/target row mismatch");
  }
}

ModelParams ZerosLike(const ModelParams& model) {
  ModelParams z = model;
  for (DenseLayer& layer : z.layers) {
    std::fill(layer.weights.begin(), layer.weights.end(), 0.0);
    std::fill(layer.bias.begin(), layer.bias.end(), 0.0);
  }
  return z;
}

// Adds d(loss)/d(params) for one row, scaled by `scale`, into `grad`.
double AccumulateRow(const ModelParams& model, std::span<const double> x,
                     std::span<const double> target, double scale,
                     ModelParams& grad) {
  const Trace t = Run(model, x);
  const double loss = BlockCrossEntropy(t.probs, target, model.blocks);

  // d loss / d logits = (p * sum(t_block) - t) / blocks
  std::vector<double> dlogits(model.output_dim());
  for (int b = 0; b < model.blocks; ++b) {
    const std::size_t off = b * model.block_width;
    double mass = 0.0;
    for (std::size_t k = 0; k < model.block_width; ++k) mass += target[off + k];
    for (std::size_t k = 0; k < model.block_width; ++k) {
      dlogits[off + k] =
          (t.probs[off + k] * mass - target[off + k]) / model.blocks;
    }
  }

  const bool linear = model.hidden == 0;
  const DenseLayer& head = model.layers.back();
  DenseLayer& dhead = grad.layers.back();
  std::span<const double> head_in = linear ? x : std::span<const double>(t.hidden);
  for (std::size_t o = 0; o < head.out; ++o) {
    const double g = dlogits[o] * scale;
    dhead.bias[o] += g;
    double* row = dhead.weights.data() + o * head.in;
    for (std::size_t i = 0; i < head.in; ++i) row[i] += g * head_in[i];
  }
  if (linear) return loss;

  std::vector<double> dpre(model.hidden, 0.0);
  for (std::size_t o = 0; o < head.out; ++o) {
    const double* w = head.weights.data() + o * head.in;
    for (std::size_t i = 0; i < model.hidden; ++i) dpre[i] += w[i] * dlogits[o];
  }
  DenseLayer& dfirst = grad.layers[0];
  for (std::size_t h = 0; h < model.hidden; ++h) {
    if (t.pre[h] <= 0.0) continue;
    const double g = dpre[h] * scale;
    dfirst.bias[h] += g;
    double* row = dfirst.weights.data() + h * dfirst.in;
    for (std::size_t i = 0; i < dfirst.in; ++i) row[i] += g * x[i];
  }
  return loss;
}

// Weight init and the shuffle schedule draw from separate streams.
std::uint64_t InitSeed(std::uint64_t seed) { return seed ^ 0x9e3779b97f4a7c15ULL; }

}  // namespace

std::size_t ModelParams::parameter_count() const {
  std::size_t n = 0;
  for (const DenseLayer& layer : layers) {
    n += layer.weights.size() + layer.bias.size();
  }
  return n;
}

double& ModelParams::parameter(std::size_t i) {
  for (DenseLayer& layer : layers) {
    if (i < layer.weights.size()) return layer.weights[i];
    i -= layer.weights.size();
    if (i < layer.bias.size()) return layer.bias[i];
    i -= layer.bias.size();
  }
  throw Error(ErrorCode::kInvalidArgument, "parameter index out of range");
}

double ModelParams::parameter(std::size_t i) const {
  return const_cast<ModelParams&>(*this).parameter(i);
}

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0) || epochs < 0 || batch_size < 1 ||
      !(init_scale > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "learning rate, batch size and init scale must be positive");
  }
}

ModelParams InitModel(std::size_t input_dim, std::size_t hidden, int blocks,
                      std::size_t block_width, double init_scale, Rng& rng) {
  if (input_dim == 0 || blocks < 1 || block_width == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty model shape");
  }
  ModelParams model{input_dim, hidden, blocks, block_width, {}};
  const std::size_t out = model.output_dim();
  if (hidden == 0) {
    model.layers.push_back(MakeLayer(input_dim, out, init_scale, rng));
  } else {
    model.layers.push_back(MakeLayer(input_dim, hidden, init_scale, rng));
    model.layers.push_back(MakeLayer(hidden, out, init_scale, rng));
  }
  return model;
}

std::vector<double> Forward(const ModelParams& model,
                            std::span<const double> x) {
  return Run(model, x).probs;
}

double BlockCrossEntropy(std::span<const double> pred,
                         std::span<const double> target, int blocks) {
  if (pred.size() != target.size() || blocks < 1 ||
      pred.size() % static_cast<std::size_t>(blocks) != 0) {
    throw Error(ErrorCode::kBadLength,
                "prediction and target must have equal, block-divisible size");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < pred.size(); ++k) {
    if (target[k] == 0.0) continue;
    if (pred[k] <= 0.0) return std::numeric_limits<double>::infinity();
    total -= target[k] * std::log(pred[k]);
  }
  return total / blocks;
}

GradientResult ComputeGradient(const ModelParams& model, const Matrix& features,
                               const Matrix& targets,
                               std::span<const std::size_t> batch) {
  CheckTargets(model, features, targets);
  GradientResult result{ZerosLike(model), 0.0};
  if (batch.empty()) return result;
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (std::size_t i : batch) {
    result.loss += AccumulateRow(model, features.row(i), targets.row(i), scale,
                                 result.gradient);
  }
  result.loss *= scale;
  return result;
}

double MeanLoss(const ModelParams& model, const Matrix& features,
                const Matrix& targets, std::span<const std::size_t> batch) {
  CheckTargets(model, features, targets);
  double total = 0.0;
  for (std::size_t i : batch) {
    total += BlockCrossEntropy(Forward(model, features.row(i)), targets.row(i),
                               model.blocks);
  }
  return batch.empty() ? 0.0 : total / static_cast<double>(batch.size());
}

TrainResult Fit(ModelParams init, const Matrix& features, const Matrix& targets,
                const TrainConfig& cfg) {
  cfg.Validate();
  CheckTargets(init, features, targets);
  if (features.rows == 0) {
    throw Error(ErrorCode::kInvalidArgument, "no training rows");
  }
  TrainResult result{std::move(init), {}};
  ModelParams& model = result.model;
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(features.rows);
  std::iota(order.begin(), order.end(), 0);
  const auto batch_size = static_cast<std::size_t>(cfg.batch_size);
  const std::size_t count = model.parameter_count();

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const std::size_t end = std::min(order.size(), start + batch_size);
      std::span<const std::size_t> batch(order.data() + start, end - start);
      const GradientResult g = ComputeGradient(model, features, targets, batch);
      epoch_loss += g.loss * static_cast<double>(batch.size());
      for (std::size_t p = 0; p < count; ++p) {
        model.parameter(p) -= cfg.learning_rate * g.gradient.parameter(p);
      }
    }
    result.epoch_losses.push_back(epoch_loss /
                                  static_cast<double>(order.size()));
  }
  return result;
}

Matrix ConfusedTargets(const EncryptedDataset& dataset) {
  const std::size_t width = kCiphertextBlocks * dataset.pk.group.q();
  Matrix targets(0, width);
  for (const ConfusedLabel& label : TrainingTargets(dataset)) {
    targets.AppendRow(label.values);
  }
  return targets;
}

Matrix OneHotTargets(const LabeledDataset& dataset) {
  Matrix targets(dataset.size(), static_cast<std::size_t>(dataset.num_classes));
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    targets(i, static_cast<std::size_t>(dataset.labels[i])) = 1.0;
  }
  return targets;
}

TrainResult Train(const EncryptedDataset& dataset, const TrainConfig& cfg) {
  cfg.Validate();
  if (dataset.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "no training rows");
  }
  if (static_cast<std::uint64_t>(dataset.num_classes) > dataset.pk.group.q()) {
    throw Error(ErrorCode::kTooManyClasses, "class count exceeds q");
  }
  Rng init_rng(InitSeed(cfg.seed));
  ModelParams model =
      InitModel(dataset.dim(), cfg.hidden, kCiphertextBlocks,
                dataset.pk.group.q(), cfg.init_scale, init_rng);
  return Fit(std::move(model), dataset.features, ConfusedTargets(dataset), cfg);
}

TrainResult TrainBaseline(const LabeledDataset& dataset,
                          const TrainConfig& cfg) {
  cfg.Validate();
  dataset.Validate();
  Rng init_rng(InitSeed(cfg.seed));
  ModelParams model = InitModel(dataset.dim(), cfg.hidden, 1,
                                static_cast<std::size_t>(dataset.num_classes),
                                cfg.init_scale, init_rng);
  return Fit(std::move(model), dataset.features, OneHotTargets(dataset), cfg);
}

int PredictPlain(const ModelParams& model, std::span<const double> x) {
  return static_cast<int>(ArgMax(Forward(model, x)));
}

}  // namespace labelcrypt
