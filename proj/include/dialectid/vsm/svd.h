// vsm/svd.h

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DIALECTID_VSM_SVD_H_
#define DIALECTID_VSM_SVD_H_

#include <cstdint>

#include <Eigen/Core>

#include "dialectid/vsm/matrix.h"
#include "dialectid/vsm/sparse.h"

namespace dialectid {

// Top-k left singular subspace of a corpus matrix. Columns of basis are
// orthonormal; singular values are nonincreasing. The sign of each column is
// fixed so that its largest-magnitude entry is nonnegative, which makes
// projections reproducible across runs.
struct SvdProjection {
  Eigen::MatrixXd basis;            // d x k
  Eigen::VectorXd singular_values;  // k, nonincreasing
  double input_frobenius_sq = 0.0;  // ||M||_F^2 of the fitted matrix

  int k() const { return static_cast<int>(basis.cols()); }
  int input_dim() const { return static_cast<int>(basis.rows()); }

  // ||M - M_k||_F^2 = ||M||_F^2 - sum_{i<=k} sigma_i^2, clamped at 0.
  double reconstruction_error_sq() const {
    double e = input_frobenius_sq - singular_values.squaredNorm();
    return e > 0.0 ? e : 0.0;
  }
};

// Exact dense SVD (via Gram eigendecomposition on the smaller side) when
// min(d, N) <= 2000; above that, a seeded randomized range finder with two
// power iterations. Deterministic given the seed. Requires 1 <= k <= min(d, N).
SvdProjection fit_svd(const VsmMatrix &m, int k, uint64_t seed = 0);

// basis^T * vec. Dimension of vec must equal the fitted d.
Eigen::VectorXd project(const SparseVector &vec, const SvdProjection &p);
Eigen::VectorXd project(const Eigen::VectorXd &vec, const SvdProjection &p);

// [a; b], a first.
Eigen::VectorXd concat_features(const Eigen::VectorXd &a,
                                const Eigen::VectorXd &b);

}  // namespace dialectid

#endif  // DIALECTID_VSM_SVD_H_
