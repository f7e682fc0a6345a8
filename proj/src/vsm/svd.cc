// vsm/svd.cc

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

#include "dialectid/vsm/svd.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "dialectid/core/error.h"
#include "dialectid/core/rng.h"

namespace dialectid {

namespace {

constexpr int kDenseLimit = 2000;
constexpr int kOversample = 10;
constexpr int kPowerIterations = 2;

// y = M x, accumulated column by column.
Eigen::VectorXd matvec(const VsmMatrix &m, const Eigen::VectorXd &x) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m.dim);
  for (size_t j = 0; j < m.columns.size(); ++j)
    m.columns[j].add_to(x(static_cast<Eigen::Index>(j)), &y);
  return y;
}

// y = M^T x.
Eigen::VectorXd matvec_t(const VsmMatrix &m, const Eigen::VectorXd &x) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(m.columns.size()));
  for (size_t j = 0; j < m.columns.size(); ++j) {
    double s = 0.0;
    for (const auto &e : m.columns[j].entries) s += e.second * x(e.first);
    y(static_cast<Eigen::Index>(j)) = s;
  }
  return y;
}

double frobenius_sq(const VsmMatrix &m) {
  double s = 0.0;
  for (const auto &col : m.columns) s += col.squared_norm();
  return s;
}

// Largest-magnitude entry of each column made nonnegative; first index wins
// on magnitude ties.
void fix_signs(Eigen::MatrixXd *basis) {
  for (Eigen::Index c = 0; c < basis->cols(); ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < basis->rows(); ++r) {
      double a = std::abs((*basis)(r, c));
      if (a > best) {
        best = a;
        arg = r;
      }
    }
    if ((*basis)(arg, c) < 0.0) basis->col(c) = -basis->col(c);
  }
}

// Orthonormal completion for singular values that are numerically zero:
// canonical basis vectors orthogonalized against the columns already in
// place. Deterministic.
void complete_basis(Eigen::MatrixXd *basis, int filled) {
  const Eigen::Index d = basis->rows();
  Eigen::Index next = 0;
  for (int c = filled; c < basis->cols(); ++c) {
    while (true) {
      require(next < d, "fit_svd: cannot complete orthonormal basis");
      Eigen::VectorXd cand = Eigen::VectorXd::Zero(d);
      cand(next++) = 1.0;
      for (int j = 0; j < c; ++j)
        cand -= basis->col(j).dot(cand) * basis->col(j);
      double norm = cand.norm();
      if (norm > 1e-6) {
        basis->col(c) = cand / norm;
        break;
      }
    }
  }
}

SvdProjection from_eigen_pairs(const Eigen::MatrixXd &basis,
                               const Eigen::VectorXd &sigma, double frob) {
  SvdProjection p;
  p.basis = basis;
  p.singular_values = sigma;
  p.input_frobenius_sq = frob;
  fix_signs(&p.basis);
  return p;
}

// Exact path, d <= N: eigendecompose M M^T (d x d).
SvdProjection fit_gram_rows(const VsmMatrix &m, int k) {
  const Eigen::Index d = m.dim;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
  for (const auto &col : m.columns)
    for (const auto &a : col.entries)
      for (const auto &b : col.entries)
        gram(a.first, b.first) += a.second * b.second;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  require(es.info() == Eigen::Success, "fit_svd: eigensolver failed");
  // Eigenvalues come out ascending.
  Eigen::MatrixXd basis(d, k);
  Eigen::VectorXd sigma(k);
  for (int i = 0; i < k; ++i) {
    double ev = es.eigenvalues()(d - 1 - i);
    sigma(i) = ev > 0.0 ? std::sqrt(ev) : 0.0;
    basis.col(i) = es.eigenvectors().col(d - 1 - i);
  }
  return from_eigen_pairs(basis, sigma, frobenius_sq(m));
}

// Exact path, N < d: eigendecompose M^T M (N x N), then U_i = M v_i / sigma_i.
SvdProjection fit_gram_cols(const VsmMatrix &m, int k) {
  const Eigen::Index n = static_cast<Eigen::Index>(m.columns.size());
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      double v = m.columns[i].dot(m.columns[j]);
      gram(i, j) = v;
      gram(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  require(es.info() == Eigen::Success, "fit_svd: eigensolver failed");

  Eigen::MatrixXd basis(static_cast<Eigen::Index>(m.dim), k);
  Eigen::VectorXd sigma(k);
  double sigma_max = 0.0;
  int filled = 0;
  for (int i = 0; i < k; ++i) {
    double ev = es.eigenvalues()(n - 1 - i);
    double s = ev > 0.0 ? std::sqrt(ev) : 0.0;
    sigma(i) = s;
    if (i == 0) sigma_max = s;
    if (s <= sigma_max * 1e-12 || s == 0.0) break;
    basis.col(i) = matvec(m, es.eigenvectors().col(n - 1 - i)) / s;
    ++filled;
  }
  for (int i = filled; i < k; ++i) sigma(i) = 0.0;
  complete_basis(&basis, filled);
  return from_eigen_pairs(basis, sigma, frobenius_sq(m));
}

// Randomized range finder (seeded Gaussian test matrix, power iterations with
// re-orthonormalization), then an exact SVD of the small projected matrix.
SvdProjection fit_randomized(const VsmMatrix &m, int k, uint64_t seed) {
  const Eigen::Index d = m.dim;
  const Eigen::Index n = static_cast<Eigen::Index>(m.columns.size());
  const Eigen::Index ell =
      std::min<Eigen::Index>(k + kOversample, std::min(d, n));

  Rng rng(seed);
  Eigen::MatrixXd omega(n, ell);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < ell; ++j) omega(i, j) = rng.normal();

  Eigen::MatrixXd y(d, ell);
  for (Eigen::Index j = 0; j < ell; ++j) y.col(j) = matvec(m, omega.col(j));

  auto orthonormalize = [](Eigen::MatrixXd *a) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(*a);
    *a = qr.householderQ() * Eigen::MatrixXd::Identity(a->rows(), a->cols());
  };

  orthonormalize(&y);
  for (int it = 0; it < kPowerIterations; ++it) {
    Eigen::MatrixXd z(n, ell);
    for (Eigen::Index j = 0; j < ell; ++j) z.col(j) = matvec_t(m, y.col(j));
    orthonormalize(&z);
    for (Eigen::Index j = 0; j < ell; ++j) y.col(j) = matvec(m, z.col(j));
    orthonormalize(&y);
  }

  // B = Q^T M is ell x N; its left singular vectors via the small Gram.
  Eigen::MatrixXd b(ell, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(d);
    m.columns[j].add_to(1.0, &col);
    b.col(j) = y.transpose() * col;
  }
  Eigen::MatrixXd small_gram = b * b.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(small_gram);
  require(es.info() == Eigen::Success, "fit_svd: eigensolver failed");

  Eigen::MatrixXd basis(d, k);
  Eigen::VectorXd sigma(k);
  for (int i = 0; i < k; ++i) {
    double ev = es.eigenvalues()(ell - 1 - i);
    sigma(i) = ev > 0.0 ? std::sqrt(ev) : 0.0;
    basis.col(i) = y * es.eigenvectors().col(ell - 1 - i);
  }
  return from_eigen_pairs(basis, sigma, frobenius_sq(m));
}

}  // namespace

SvdProjection fit_svd(const VsmMatrix &m, int k, uint64_t seed) {
  const Eigen::Index d = m.dim;
  const Eigen::Index n = static_cast<Eigen::Index>(m.columns.size());
  if (k < 1 || k > std::min(d, n))
    throw Error(Msg() << "fit_svd: k = " << k << " out of range [1, "
                      << std::min(d, n) << "]");
  if (std::min(d, n) <= kDenseLimit)
    return d <= n ? fit_gram_rows(m, k) : fit_gram_cols(m, k);
  return fit_randomized(m, k, seed);
}

Eigen::VectorXd project(const SparseVector &vec, const SvdProjection &p) {
  require(static_cast<Eigen::Index>(vec.dim) == p.basis.rows(),
          "project: dimension mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(p.basis.cols());
  for (const auto &e : vec.entries)
    out += e.second * p.basis.row(e.first).transpose();
  return out;
}

Eigen::VectorXd project(const Eigen::VectorXd &vec, const SvdProjection &p) {
  require(vec.size() == p.basis.rows(), "project: dimension mismatch");
  return p.basis.transpose() * vec;
}

Eigen::VectorXd concat_features(const Eigen::VectorXd &a,
                                const Eigen::VectorXd &b) {
  Eigen::VectorXd out(a.size() + b.size());
  out.head(a.size()) = a;
  out.tail(b.size()) = b;
  return out;
}

}  // namespace dialectid
