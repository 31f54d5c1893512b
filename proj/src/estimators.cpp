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

#include "qwalk/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk {

Eigen::Map<const RowMatrix> feature_matrix(const Dataset &ds) {
    return {ds.features.data(), static_cast<Eigen::Index>(ds.rows()), static_cast<Eigen::Index>(ds.feature_len)};
}

Eigen::Map<const RowMatrix> target_matrix(const Dataset &ds) {
    return {ds.targets.data(), static_cast<Eigen::Index>(ds.rows()), static_cast<Eigen::Index>(ds.target_len())};
}

namespace {

// Centres X and Y, solves for W with `solve`, and folds the means into b.
template <typename Solver>
LinearModel fit_centered(const Dataset &train, Solver solve) {
    if (train.rows() < 2) {
        throw InsufficientData("regression needs at least 2 training rows, got " + std::to_string(train.rows()));
    }
    auto x = feature_matrix(train);
    auto y = target_matrix(train);
    LinearModel m;
    m.feature_means = x.colwise().mean().transpose();
    m.target_means = y.colwise().mean().transpose();
    DenseMatrix xc = x.rowwise() - m.feature_means.transpose();
    DenseMatrix yc = y.rowwise() - m.target_means.transpose();
    m.weights = solve(xc, yc);
    m.bias = m.target_means - m.weights.transpose() * m.feature_means;
    return m;
}

void check_len(std::size_t expected, std::size_t got) {
    if (expected != got) {
        throw ShapeError("feature length mismatch: model expects " + std::to_string(expected) + ", got " +
                         std::to_string(got));
    }
}

}  // namespace

LinearModel fit_linear(const Dataset &train) {
    return fit_centered(train, [](const DenseMatrix &x, const DenseMatrix &y) {
        return lstsq_min_norm(x, y, kDefaultRcond);
    });
}

RidgeModel fit_ridge(const Dataset &train, double alpha) {
    if (!(alpha > 0.0)) {
        throw InvalidParameter("ridge alpha must be positive");
    }
    RidgeModel m;
    static_cast<LinearModel &>(m) =
        fit_centered(train, [alpha](const DenseMatrix &x, const DenseMatrix &y) { return ridge_solve(x, y, alpha); });
    m.alpha = alpha;
    return m;
}

KnnModel fit_knn(const Dataset &train, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > train.rows()) {
        throw InvalidParameter("k must lie in [1, " + std::to_string(train.rows()) + "], got " + std::to_string(k));
    }
    KnnModel m;
    m.k = k;
    m.feature_len = train.feature_len;
    m.target_len = train.target_len();
    m.features = train.features;
    m.targets = train.targets;
    return m;
}

BaselineModel fit_baseline(const Dataset &train) {
    if (train.rows() < 1) {
        throw InsufficientData("baseline needs at least 1 training row");
    }
    auto y = target_matrix(train);
    DenseVector mean = y.colwise().mean().transpose();
    return BaselineModel{std::vector<double>(mean.data(), mean.data() + mean.size())};
}

std::vector<double> predict(const LinearModel &model, std::span<const double> features) {
    check_len(model.feature_len(), features.size());
    Eigen::Map<const DenseVector> x(features.data(), static_cast<Eigen::Index>(features.size()));
    DenseVector y = model.weights.transpose() * x + model.bias;
    return {y.data(), y.data() + y.size()};
}

std::vector<double> predict(const KnnModel &model, std::span<const double> features) {
    check_len(model.feature_len, features.size());
    const std::size_t n = model.rows();
    std::vector<double> dist(n);
    for (std::size_t r = 0; r < n; r++) {
        const double *row = model.features.data() + r * model.feature_len;
        double s = 0.0;
        for (std::size_t j = 0; j < model.feature_len; j++) {
            double d = row[j] - features[j];
            s += d * d;
        }
        dist[r] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });

    std::vector<double> out(model.target_len, 0.0);
    for (int i = 0; i < model.k; i++) {
        const double *t = model.targets.data() + order[static_cast<std::size_t>(i)] * model.target_len;
        for (std::size_t j = 0; j < model.target_len; j++) {
            out[j] += t[j];
        }
    }
    for (double &v : out) {
        v /= model.k;
    }
    return out;
}

std::vector<double> predict(const BaselineModel &model, std::span<const double>) {
    return model.constant;
}

double mse(const std::vector<std::vector<double>> &predictions, const std::vector<std::vector<double>> &truth) {
    if (predictions.empty() || predictions.size() != truth.size()) {
        throw ShapeError("mse needs equally many predictions and truths (n >= 1)");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < predictions.size(); i++) {
        if (predictions[i].size() != truth[i].size() || predictions[i].size() != predictions[0].size()) {
            throw ShapeError("mse vectors differ in length at sample " + std::to_string(i));
        }
        for (std::size_t j = 0; j < truth[i].size(); j++) {
            double d = predictions[i][j] - truth[i][j];
            total += d * d;
        }
    }
    return total / static_cast<double>(predictions.size());
}

}  // namespace qwalk
