// Copyright 2026 The qwalk Authors
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

#ifndef QWALK_NEURAL_HPP
#define QWALK_NEURAL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qwalk/dataset.hpp"
#include "qwalk/estimators.hpp"
#include "qwalk/numerics.hpp"

namespace qwalk {

/// Fully connected layer: out = W^T in + b, with W stored fan_in x fan_out.
struct DenseLayer {
    DenseMatrix weights;
    DenseVector bias;

    bool operator==(const DenseLayer &other) const {
        return weights == other.weights && bias == other.bias;
    }
};

/// Feedforward net: ReLU on every hidden layer, exp on the output layer.
struct MlpModel {
    std::vector<int> layer_sizes;
    std::vector<DenseLayer> layers;

    std::size_t input_size() const {
        return static_cast<std::size_t>(layer_sizes.front());
    }
    std::size_t output_size() const {
        return static_cast<std::size_t>(layer_sizes.back());
    }

    bool operator==(const MlpModel &other) const = default;
};

/// Glorot-uniform weights in +-sqrt(6/(fan_in+fan_out)), zero biases.
MlpModel init_mlp(const std::vector<int> &layer_sizes, uint64_t seed);

std::vector<double> forward(const MlpModel &model, std::span<const double> features);
/// One output row per input row.
RowMatrix forward_batch(const MlpModel &model, const RowMatrix &inputs);

/// Same layout as MlpModel::layers.
using Gradients = std::vector<DenseLayer>;

struct LossAndGrad {
    double loss = 0.0;
    Gradients grads;
};

/// Mean over the batch of ||yhat - y||^2 and its exact gradient
/// (ReLU'(0) = 0).
LossAndGrad loss_and_grad(const MlpModel &model, const RowMatrix &inputs, const RowMatrix &targets);

struct NadamConfig {
    double learning_rate = 0.002;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct NadamState {
    NadamConfig config;
    long step_count = 0;
    Gradients first_moment;
    Gradients second_moment;

    static NadamState for_model(const MlpModel &model, const NadamConfig &config);
};

/// One Nadam update:
///   m <- b1 m + (1-b1) g,  v <- b2 v + (1-b2) g^2,
///   mhat = b1 m / (1 - b1^(t+1)) + (1-b1) g / (1 - b1^t),  vhat = v / (1 - b2^t),
///   p <- p - lr * mhat / (sqrt(vhat) + eps).
/// Throws NumericalFailure naming the layer if any gradient is non-finite.
void nadam_step(NadamState &state, MlpModel &model, const Gradients &grads);

/// Per-target affine map applied before training: scaled = (y - shift) * scale.
struct TargetScaling {
    std::vector<double> scale;
    std::vector<double> shift;

    std::vector<double> apply(std::span<const double> y) const;
    std::vector<double> invert(std::span<const double> scaled) const;

    bool operator==(const TargetScaling &other) const = default;
};

struct TrainConfig {
    int epochs = 100;
    std::size_t batch_size = 64;
    uint64_t seed = 42;
    std::vector<int> hidden_layers = {200};
    NadamConfig optimizer;
    TargetScaling scaling;
};

struct TrainResult {
    MlpModel model;
    std::vector<double> history;  // mean training loss per epoch
};

/// Mini-batch training. Weights are seeded from `seed`; the row order of
/// epoch e comes from a SplitMix64 shuffle seeded with seed + e.
TrainResult train_mlp(const Dataset &train, const TrainConfig &config);

/// Forward pass followed by the inverse target scaling.
std::vector<double> predict_params(const MlpModel &model, std::span<const double> features,
                                   const TargetScaling &scaling);

}  // namespace qwalk

#endif
