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

#ifndef QWALK_NUMERICS_HPP
#define QWALK_NUMERICS_HPP

#include <Eigen/Dense>

namespace qwalk {

using DenseMatrix = Eigen::MatrixXd;
using DenseVector = Eigen::VectorXd;

constexpr double kDefaultRcond = 1e-12;

/// Minimum-norm least-squares solution of A X = B through a thin SVD.
/// Singular values below rcond * sigma_max are treated as zero. Works for
/// any shape, including n < p.
DenseMatrix lstsq_min_norm(const DenseMatrix &a, const DenseMatrix &b, double rcond = kDefaultRcond);

/// (A^T A + alpha I)^{-1} A^T B via a Cholesky factorization.
DenseMatrix ridge_solve(const DenseMatrix &a, const DenseMatrix &b, double alpha);

}  // namespace qwalk

#endif
