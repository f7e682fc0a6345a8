// ivector/backend.h

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

#ifndef DIALECTID_IVECTOR_BACKEND_H_
#define DIALECTID_IVECTOR_BACKEND_H_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dialectid/classifiers/prediction.h"
#include "dialectid/ivector/tv.h"

namespace dialectid {

// Discriminant projection: y = projection' * (x - mean_shift).  Columns are
// generalized eigenvectors of (between, within) scatter, unit-length under
// the within-class metric, eigenvalues descending.
struct LdaTransform {
  Eigen::MatrixXd projection;  // R x p, p <= C-1
  Eigen::VectorXd mean_shift;  // global mean of the fitting data
  Eigen::VectorXd eigenvalues; // p, descending

  Eigen::VectorXd apply(const Eigen::VectorXd &x) const {
    return projection.transpose() * (x - mean_shift);
  }
};

// Whitening by the averaged within-class covariance: y = B' x where B is the
// lower Cholesky factor of W^-1.
struct WccnTransform {
  Eigen::MatrixXd b;  // lower triangular

  Eigen::VectorXd apply(const Eigen::VectorXd &x) const {
    return b.transpose() * x;
  }
};

// Shrinkage is applied only as needed: epsilon steps through
// {0, 1e-4, 1e-3, 1e-2} until the within-class scatter factorizes, so
// well-conditioned data is left untouched.
LdaTransform fit_lda(const std::vector<Eigen::VectorXd> &vectors,
                     const std::vector<std::string> &labels, int p);

WccnTransform fit_wccn(const std::vector<Eigen::VectorXd> &vectors,
                       const std::vector<std::string> &labels);

Eigen::VectorXd length_normalize(const Eigen::VectorXd &v);

double cosine_score(const Eigen::VectorXd &a, const Eigen::VectorXd &b);

// The transform chain applied to every vector before scoring.
struct BackendChain {
  std::optional<LdaTransform> lda;
  std::optional<WccnTransform> wccn;
  bool length_norm = false;

  Eigen::VectorXd apply(const Eigen::VectorXd &x) const;
};

// Cosine scoring against per-class mean (length-normalized) model vectors.
struct CosineBackend {
  BackendChain chain;
  std::vector<std::string> classes;  // sorted by label
  Eigen::MatrixXd class_means;       // C x p, rows length-normalized
};

struct BackendOptions {
  bool use_lda = true;
  int lda_dim = 0;  // 0 = C-1
  bool use_wccn = true;
  bool use_length_norm = true;
};

CosineBackend fit_backend(const std::vector<IVector> &ivectors,
                          const BackendOptions &opts);

Prediction backend_classify(const CosineBackend &be, const Eigen::VectorXd &v,
                            const std::string &id);

void save_backend(const CosineBackend &be, const std::string &path); // "BKE1"
CosineBackend load_backend(const std::string &path);

}  // namespace dialectid

#endif  // DIALECTID_IVECTOR_BACKEND_H_
