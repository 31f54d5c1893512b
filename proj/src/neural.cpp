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

#include "qwalk/neural.hpp"

#include <cmath>
#include <string>

#include "qwalk/error.hpp"
#include "qwalk/splitmix.hpp"

namespace qwalk {

MlpModel init_mlp(const std::vector<int> &layer_sizes, uint64_t seed) {
    if (layer_sizes.size() < 2) {
        throw InvalidParameter("an MLP needs at least an input and an output layer");
    }
    for (int s : layer_sizes) {
        if (s < 1) {
            throw InvalidParameter("layer sizes must be positive");
        }
    }
    MlpModel model;
    model.layer_sizes = layer_sizes;
    SplitMix64 rng(seed);
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); l++) {
        const int fan_in = layer_sizes[l];
        const int fan_out = layer_sizes[l + 1];
        const double limit = std::sqrt(6.0 / (fan_in + fan_out));
        DenseLayer layer{DenseMatrix(fan_in, fan_out), DenseVector::Zero(fan_out)};
        for (int i = 0; i < fan_in; i++) {
            for (int j = 0; j < fan_out; j++) {
                layer.weights(i, j) = (2.0 * rng.uniform_unit() - 1.0) * limit;
            }
        }
        model.layers.push_back(std::move(layer));
    }
    return model;
}

namespace {

void check_input(const MlpModel &model, std::size_t cols) {
    if (cols != model.input_size()) {
        throw ShapeError("MLP expects " + std::to_string(model.input_size()) + " inputs, got " + std::to_string(cols));
    }
}

// Pre-activations and activations of a batch pass. activations[0] is the
// input; activations[l+1] is the output of layer l.
struct Trace {
    std::vector<RowMatrix> pre;
    std::vector<RowMatrix> activations;
};

Trace run(const MlpModel &model, const RowMatrix &inputs) {
    Trace t;
    t.activations.push_back(inputs);
    const std::size_t n_layers = model.layers.size();
    for (std::size_t l = 0; l < n_layers; l++) {
        const auto &layer = model.layers[l];
        RowMatrix z = t.activations.back() * layer.weights;
        z.rowwise() += layer.bias.transpose();
        RowMatrix a = l + 1 == n_layers ? RowMatrix(z.array().exp()) : RowMatrix(z.array().max(0.0));
        t.pre.push_back(std::move(z));
        t.activations.push_back(std::move(a));
    }
    return t;
}

}  // namespace

RowMatrix forward_batch(const MlpModel &model, const RowMatrix &inputs) {
    check_input(model, static_cast<std::size_t>(inputs.cols()));
    return run(model, inputs).activations.back();
}

std::vector<double> forward(const MlpModel &model, std::span<const double> features) {
    check_input(model, features.size());
    RowMatrix x = Eigen::Map<const RowMatrix>(features.data(), 1, static_cast<Eigen::Index>(features.size()));
    RowMatrix y = forward_batch(model, x);
    return {y.data(), y.data() + y.size()};
}

LossAndGrad loss_and_grad(const MlpModel &model, const RowMatrix &inputs, const RowMatrix &targets) {
    check_input(model, static_cast<std::size_t>(inputs.cols()));
    if (inputs.rows() == 0) {
        throw ShapeError("empty batch");
    }
    if (targets.rows() != inputs.rows() || static_cast<std::size_t>(targets.cols()) != model.output_size()) {
        throw ShapeError("target batch shape does not match the network output");
    }
    const double batch = static_cast<double>(inputs.rows());
    Trace t = run(model, inputs);
    RowMatrix diff = t.activations.back() - targets;

    LossAndGrad out;
    out.loss = diff.squaredNorm() / batch;
    out.grads.resize(model.layers.size());

    // d loss / d z at the output: 2 (yhat - y) / B * exp'(z), and exp' = exp.
    RowMatrix delta = (2.0 / batch) * diff.cwiseProduct(t.activations.back());
    for (std::size_t l = model.layers.size(); l-- > 0;) {
        out.grads[l].weights = t.activations[l].transpose() * delta;
        out.grads[l].bias = delta.colwise().sum().transpose();
        if (l > 0) {
            RowMatrix back = delta * model.layers[l].weights.transpose();
            delta = back.cwiseProduct(RowMatrix((t.pre[l - 1].array() > 0.0).cast<double>()));
        }
    }
    return out;
}

NadamState NadamState::for_model(const MlpModel &model, const NadamConfig &config) {
    NadamState s;
    s.config = config;
    for (const auto &layer : model.layers) {
        DenseLayer zero{DenseMatrix::Zero(layer.weights.rows(), layer.weights.cols()),
                        DenseVector::Zero(layer.bias.size())};
        s.first_moment.push_back(zero);
        s.second_moment.push_back(zero);
    }
    return s;
}

namespace {

template <typename Param>
void nadam_update(Param &p, Param &m, Param &v, const Param &g, const NadamConfig &c, double m_corr_next,
                  double g_corr, double v_corr) {
    m = c.beta1 * m + (1.0 - c.beta1) * g;
    v = c.beta2 * v + (1.0 - c.beta2) * g.cwiseProduct(g);
    auto m_hat = (c.beta1 / m_corr_next) * m.array() + ((1.0 - c.beta1) / g_corr) * g.array();
    auto v_hat = v.array() / v_corr;
    p.array() -= c.learning_rate * m_hat / (v_hat.sqrt() + c.epsilon);
}

}  // namespace

void nadam_step(NadamState &state, MlpModel &model, const Gradients &grads) {
    if (grads.size() != model.layers.size() || state.first_moment.size() != model.layers.size()) {
        throw ShapeError("gradient layout does not match the model");
    }
    for (std::size_t l = 0; l < grads.size(); l++) {
        const auto &g = grads[l];
        const auto &p = model.layers[l];
        if (g.weights.rows() != p.weights.rows() || g.weights.cols() != p.weights.cols() ||
            g.bias.size() != p.bias.size()) {
            throw ShapeError("gradient shape mismatch in layer " + std::to_string(l));
        }
        if (!g.weights.allFinite() || !g.bias.allFinite()) {
            throw NumericalFailure("non-finite gradient in layer " + std::to_string(l));
        }
    }
    const NadamConfig &c = state.config;
    state.step_count++;
    const double t = static_cast<double>(state.step_count);
    const double m_corr_next = 1.0 - std::pow(c.beta1, t + 1.0);
    const double g_corr = 1.0 - std::pow(c.beta1, t);
    const double v_corr = 1.0 - std::pow(c.beta2, t);
    for (std::size_t l = 0; l < grads.size(); l++) {
        auto &p = model.layers[l];
        auto &m = state.first_moment[l];
        auto &v = state.second_moment[l];
        nadam_update(p.weights, m.weights, v.weights, grads[l].weights, c, m_corr_next, g_corr, v_corr);
        nadam_update(p.bias, m.bias, v.bias, grads[l].bias, c, m_corr_next, g_corr, v_corr);
    }
}

std::vector<double> TargetScaling::apply(std::span<const double> y) const {
    if (y.size() != scale.size() || y.size() != shift.size()) {
        throw ShapeError("target scaling expects " + std::to_string(scale.size()) + " targets");
    }
    std::vector<double> out(y.size());
    for (std::size_t j = 0; j < y.size(); j++) {
        out[j] = (y[j] - shift[j]) * scale[j];
    }
    return out;
}

std::vector<double> TargetScaling::invert(std::span<const double> scaled) const {
    if (scaled.size() != scale.size() || scaled.size() != shift.size()) {
        throw ShapeError("target scaling expects " + std::to_string(scale.size()) + " targets");
    }
    std::vector<double> out(scaled.size());
    for (std::size_t j = 0; j < scaled.size(); j++) {
        out[j] = scaled[j] / scale[j] + shift[j];
    }
    return out;
}

TrainResult train_mlp(const Dataset &train, const TrainConfig &config) {
    const std::size_t n = train.rows();
    if (n == 0) {
        throw InsufficientData("MLP training needs at least one row");
    }
    if (config.epochs < 1) {
        throw InvalidParameter("epochs must be >= 1");
    }
    if (config.batch_size < 1 || config.batch_size > n) {
        throw InvalidParameter("batch size must lie in [1, " + std::to_string(n) + "]");
    }
    const std::size_t k = train.target_len();
    if (config.scaling.scale.size() != k || config.scaling.shift.size() != k) {
        throw ShapeError("target scaling must cover all " + std::to_string(k) + " targets");
    }

    std::vector<int> sizes{static_cast<int>(train.feature_len)};
    sizes.insert(sizes.end(), config.hidden_layers.begin(), config.hidden_layers.end());
    sizes.push_back(static_cast<int>(k));

    TrainResult result{init_mlp(sizes, config.seed), {}};
    NadamState opt = NadamState::for_model(result.model, config.optimizer);

    RowMatrix scaled(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
    for (std::size_t r = 0; r < n; r++) {
        auto s = config.scaling.apply(train.target_row(r));
        for (std::size_t j = 0; j < k; j++) {
            scaled(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = s[j];
        }
    }
    auto features = feature_matrix(train);

    const std::size_t batch = config.batch_size;
    RowMatrix xb;
    RowMatrix yb;
    for (int epoch = 0; epoch < config.epochs; epoch++) {
        auto order = shuffled_indices(n, config.seed + static_cast<uint64_t>(epoch));
        double epoch_loss = 0.0;
        for (std::size_t start = 0, b = 0; start < n; start += batch, b++) {
            const std::size_t len = std::min(batch, n - start);
            xb.resize(static_cast<Eigen::Index>(len), features.cols());
            yb.resize(static_cast<Eigen::Index>(len), static_cast<Eigen::Index>(k));
            for (std::size_t i = 0; i < len; i++) {
                const auto row = static_cast<Eigen::Index>(order[start + i]);
                xb.row(static_cast<Eigen::Index>(i)) = features.row(row);
                yb.row(static_cast<Eigen::Index>(i)) = scaled.row(row);
            }
            LossAndGrad lg = loss_and_grad(result.model, xb, yb);
            if (!std::isfinite(lg.loss)) {
                throw TrainingFailure("loss diverged at epoch " + std::to_string(epoch) + ", batch " +
                                      std::to_string(b));
            }
            try {
                nadam_step(opt, result.model, lg.grads);
            } catch (const NumericalFailure &e) {
                throw TrainingFailure(std::string(e.what()) + " at epoch " + std::to_string(epoch) + ", batch " +
                                      std::to_string(b));
            }
            epoch_loss += lg.loss * static_cast<double>(len);
        }
        result.history.push_back(epoch_loss / static_cast<double>(n));
    }
    return result;
}

std::vector<double> predict_params(const MlpModel &model, std::span<const double> features,
                                   const TargetScaling &scaling) {
    return scaling.invert(forward(model, features));
}

}  // namespace qwalk
