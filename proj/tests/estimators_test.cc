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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qwalk/error.hpp"
#include "qwalk/splitmix.hpp"

using namespace qwalk;

namespace {

Dataset table(const std::vector<std::vector<double>> &x, const std::vector<std::vector<double>> &y) {
    Dataset ds;
    ds.feature_len = x.front().size();
    for (std::size_t j = 0; j < y.front().size(); j++) {
        ds.target_names.push_back("t" + std::to_string(j));
    }
    for (std::size_t i = 0; i < x.size(); i++) {
        ds.append_row(x[i], y[i]);
    }
    return ds;
}

Dataset random_table(SplitMix64 &rng, std::size_t rows, std::size_t p, std::size_t k) {
    std::vector<std::vector<double>> x(rows, std::vector<double>(p));
    std::vector<std::vector<double>> y(rows, std::vector<double>(k));
    for (auto &r : x) {
        for (auto &v : r) {
            v = 2 * rng.uniform_unit() - 1;
        }
    }
    for (auto &r : y) {
        for (auto &v : r) {
            v = 2 * rng.uniform_unit() - 1;
        }
    }
    return table(x, y);
}

template <typename Model>
std::vector<std::vector<double>> predict_all(const Model &m, const Dataset &ds) {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < ds.rows(); i++) {
        out.push_back(predict(m, ds.feature_row(i)));
    }
    return out;
}

std::vector<std::vector<double>> truth(const Dataset &ds) {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < ds.rows(); i++) {
        out.emplace_back(ds.target_row(i).begin(), ds.target_row(i).end());
    }
    return out;
}

}  // namespace

TEST(fit_linear, exact_line) {
    LinearModel m = fit_linear(table({{0}, {1}, {2}, {3}}, {{1}, {3}, {5}, {7}}));
    EXPECT_NEAR(m.weights(0, 0), 2.0, 1e-12);
    EXPECT_NEAR(m.bias(0), 1.0, 1e-12);
    EXPECT_NEAR(predict(m, std::vector<double>{10})[0], 21.0, 1e-11);
}

TEST(fit_linear, needs_two_rows) {
    EXPECT_THROW(fit_linear(table({{1}}, {{1}})), InsufficientData);
}

TEST(fit_linear, interpolates_when_underdetermined) {
    SplitMix64 rng(3);
    Dataset ds = random_table(rng, 5, 20, 2);
    LinearModel m = fit_linear(ds);
    EXPECT_LT(mse(predict_all(m, ds), truth(ds)), 1e-18);
}

TEST(fit_linear, interpolates_a_small_walk_sweep) {
    GridSpec g;
    g.theta_start = 0.1;
    g.theta_stop = 1.4;
    g.theta_step = 0.065;
    g.steps = 50;
    Dataset ds = generate(g, 1);
    ASSERT_EQ(ds.rows(), 21u);
    LinearModel m = fit_linear(ds);
    EXPECT_LT(mse(predict_all(m, ds), truth(ds)), 1e-18);
}

TEST(fit_linear, affine_equivariance) {
    SplitMix64 rng(12);
    Dataset ds = random_table(rng, 30, 3, 1);
    Dataset scaled = ds;
    for (auto &v : scaled.targets) {
        v = 3.0 * v - 2.0;
    }
    LinearModel a = fit_linear(ds);
    LinearModel b = fit_linear(scaled);
    for (std::size_t i = 0; i < ds.rows(); i++) {
        EXPECT_NEAR(predict(b, ds.feature_row(i))[0], 3.0 * predict(a, ds.feature_row(i))[0] - 2.0, 1e-10);
    }
}

TEST(fit_ridge, two_point_example) {
    RidgeModel m = fit_ridge(table({{1}, {2}}, {{1}, {2}}), 0.01);
    EXPECT_NEAR(m.weights(0, 0), 0.98039, 1e-5);
    EXPECT_NEAR(m.bias(0), 0.02941, 1e-5);
    EXPECT_EQ(m.alpha, 0.01);
}

TEST(fit_ridge, rejects_nonpositive_alpha) {
    Dataset ds = table({{1}, {2}}, {{1}, {2}});
    EXPECT_THROW(fit_ridge(ds, 0.0), InvalidParameter);
    EXPECT_THROW(fit_ridge(ds, -0.5), InvalidParameter);
}

TEST(fit_ridge, weights_shrink_with_alpha) {
    SplitMix64 rng(8);
    Dataset ds = random_table(rng, 40, 6, 2);
    double ls = fit_linear(ds).weights.norm();
    double prev = ls;
    for (double alpha : {1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
        double w = fit_ridge(ds, alpha).weights.norm();
        EXPECT_LE(w, prev + 1e-12) << alpha;
        prev = w;
    }
}

TEST(fit_knn, nearest_five_average) {
    Dataset ds = table({{0}, {1}, {2}, {3}, {4}, {5}}, {{0}, {1}, {2}, {3}, {4}, {5}});
    KnnModel m = fit_knn(ds, 5);
    EXPECT_NEAR(predict(m, std::vector<double>{0})[0], 2.0, 1e-15);
}

TEST(fit_knn, ties_break_by_training_order) {
    Dataset ds = table({{-1}, {1}, {3}}, {{10}, {20}, {30}});
    KnnModel m = fit_knn(ds, 1);
    EXPECT_EQ(predict(m, std::vector<double>{0})[0], 10.0);
}

TEST(fit_knn, k_equal_rows_gives_mean) {
    SplitMix64 rng(6);
    Dataset ds = random_table(rng, 9, 4, 2);
    KnnModel m = fit_knn(ds, 9);
    BaselineModel b = fit_baseline(ds);
    auto p = predict(m, std::vector<double>{5, 5, 5, 5});
    EXPECT_NEAR(p[0], b.constant[0], 1e-14);
    EXPECT_NEAR(p[1], b.constant[1], 1e-14);
}

TEST(fit_knn, permutation_invariant_without_ties) {
    SplitMix64 rng(19);
    Dataset ds = random_table(rng, 25, 3, 1);
    std::vector<std::size_t> rev(ds.rows());
    for (std::size_t i = 0; i < rev.size(); i++) {
        rev[i] = rev.size() - 1 - i;
    }
    KnnModel a = fit_knn(ds, 4);
    KnnModel b = fit_knn(ds.select(rev), 4);
    for (int q = 0; q < 10; q++) {
        std::vector<double> x{rng.uniform_unit(), rng.uniform_unit(), rng.uniform_unit()};
        EXPECT_NEAR(predict(a, x)[0], predict(b, x)[0], 1e-14);
    }
}

TEST(fit_knn, rejects_bad_k) {
    Dataset ds = table({{0}, {1}}, {{0}, {1}});
    EXPECT_THROW(fit_knn(ds, 0), InvalidParameter);
    EXPECT_THROW(fit_knn(ds, 3), InvalidParameter);
}

TEST(fit_baseline, mse_equals_target_variance) {
    SplitMix64 rng(27);
    Dataset ds = random_table(rng, 50, 2, 1);
    BaselineModel b = fit_baseline(ds);
    double mean = 0;
    for (double v : ds.targets) {
        mean += v;
    }
    mean /= 50;
    double var = 0;
    for (double v : ds.targets) {
        var += (v - mean) * (v - mean);
    }
    var /= 50;
    EXPECT_NEAR(mse(predict_all(b, ds), truth(ds)), var, 1e-14);
}

TEST(predict, feature_length_mismatch) {
    Dataset ds = table({{0, 1}, {1, 0}, {1, 1}}, {{0}, {1}, {2}});
    EXPECT_THROW(predict(fit_linear(ds), std::vector<double>{1}), ShapeError);
    EXPECT_THROW(predict(fit_knn(ds, 1), std::vector<double>{1, 2, 3}), ShapeError);
}

TEST(mse, examples) {
    EXPECT_DOUBLE_EQ(mse({{1}, {2}}, {{2}, {4}}), 2.5);
    EXPECT_DOUBLE_EQ(mse({{1, 1}}, {{2, 2}}), 2.0);
    EXPECT_EQ(mse({{3, 4}}, {{3, 4}}), 0.0);
}

TEST(mse, shape_errors) {
    EXPECT_THROW(mse({}, {}), ShapeError);
    EXPECT_THROW(mse({{1}}, {{1}, {2}}), ShapeError);
    EXPECT_THROW(mse({{1, 2}}, {{1}}), ShapeError);
}
