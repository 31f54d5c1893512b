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

#include "qwalk/numerics.hpp"

#include <string>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

void check_system(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.rows() < 1 || a.cols() < 1 || b.cols() < 1) {
        throw ShapeError("least-squares system must be non-empty");
    }
    if (a.rows() != b.rows()) {
        throw ShapeError("row count mismatch: A has " + std::to_string(a.rows()) + ", B has " +
                         std::to_string(b.rows()));
    }
    if (!a.allFinite() || !b.allFinite()) {
        throw InvalidParameter("least-squares inputs must be finite");
    }
}

}  // namespace

DenseMatrix lstsq_min_norm(const DenseMatrix &a, const DenseMatrix &b, double rcond) {
    check_system(a, b);
    if (!(rcond >= 0.0)) {
        throw InvalidParameter("rcond must be nonnegative");
    }
    Eigen::BDCSVD<DenseMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw NumericalFailure("SVD did not converge");
    }
    const DenseVector &sigma = svd.singularValues();
    const double cutoff = sigma.size() > 0 ? rcond * sigma(0) : 0.0;
    DenseVector inv = DenseVector::Zero(sigma.size());
    for (Eigen::Index i = 0; i < sigma.size(); i++) {
        if (sigma(i) > cutoff) {
            inv(i) = 1.0 / sigma(i);
        }
    }
    DenseMatrix projected = svd.matrixU().transpose() * b;
    return svd.matrixV() * (inv.asDiagonal() * projected);
}

DenseMatrix ridge_solve(const DenseMatrix &a, const DenseMatrix &b, double alpha) {
    if (!(alpha > 0.0)) {
        throw InvalidParameter("ridge alpha must be positive");
    }
    check_system(a, b);
    DenseMatrix gram = DenseMatrix::Zero(a.cols(), a.cols());
    gram.selfadjointView<Eigen::Lower>().rankUpdate(a.transpose());
    gram.diagonal().array() += alpha;
    Eigen::LLT<DenseMatrix> llt(gram.selfadjointView<Eigen::Lower>());
    if (llt.info() != Eigen::Success) {
        throw NumericalFailure("ridge normal matrix is not positive definite");
    }
    return llt.solve(a.transpose() * b);
}

}  // namespace qwalk
