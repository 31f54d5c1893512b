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

#ifndef QWALK_ESTIMATORS_HPP
#define QWALK_ESTIMATORS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "qwalk/dataset.hpp"
#include "qwalk/numerics.hpp"

namespace qwalk {

/// y = W^T x + b. Feature and target means are kept for inspection only;
/// they are already folded into `bias`.
struct LinearModel {
    DenseMatrix weights;  // p x k
    DenseVector bias;     // k
    DenseVector feature_means;
    DenseVector target_means;

    std::size_t feature_len() const {
        return static_cast<std::size_t>(weights.rows());
    }
};

struct RidgeModel : LinearModel {
    double alpha = 0.0;
};

/// Instance-based regressor: the training rows, stored verbatim.
struct KnnModel {
    int k = 1;
    std::size_t feature_len = 0;
    std::size_t target_len = 0;
    std::vector<double> features;
    std::vector<double> targets;

    std::size_t rows() const {
        return feature_len == 0 ? 0 : features.size() / feature_len;
    }
};

/// Predicts the training-target mean for every input.
struct BaselineModel {
    std::vector<double> constant;
};

LinearModel fit_linear(const Dataset &train);
RidgeModel fit_ridge(const Dataset &train, double alpha);
KnnModel fit_knn(const Dataset &train, int k);
BaselineModel fit_baseline(const Dataset &train);

std::vector<double> predict(const LinearModel &model, std::span<const double> features);
/// Mean target of the k nearest stored rows (Euclidean distance, ties
/// broken by lower stored index).
std::vector<double> predict(const KnnModel &model, std::span<const double> features);
std::vector<double> predict(const BaselineModel &model, std::span<const double> features);

/// (1/n) * sum over samples of the squared Euclidean error.
double mse(const std::vector<std::vector<double>> &predictions, const std::vector<std::vector<double>> &truth);

/// Row-major view of the dataset's feature buffer.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
Eigen::Map<const RowMatrix> feature_matrix(const Dataset &ds);
Eigen::Map<const RowMatrix> target_matrix(const Dataset &ds);

}  // namespace qwalk

#endif
