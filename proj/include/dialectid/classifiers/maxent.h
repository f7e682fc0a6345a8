// classifiers/maxent.h

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

#ifndef DIALECTID_CLASSIFIERS_MAXENT_H_
#define DIALECTID_CLASSIFIERS_MAXENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "dialectid/classifiers/prediction.h"
#include "dialectid/core/serialize.h"
#include "dialectid/vsm/sparse.h"

namespace dialectid {

// Multinomial logistic regression ("maximum entropy") with an l2 penalty on
// the weights; the bias column is left unregularized.  Trained by full-batch
// gradient descent with a backtracking (Armijo) line search, which is
// deterministic and needs no external solver.
struct MaxEntModel {
  std::vector<std::string> classes;  // sorted by label
  uint32_t dim = 0;
  Eigen::MatrixXd weights;  // classes x dim
  Eigen::VectorXd bias;     // classes
  double lambda = 0.0;

  void write(BinaryWriter *w) const;
  static MaxEntModel read(BinaryReader *r);
};

struct MaxEntOptions {
  double lambda = 1e-3;  // l2 strength, >= 0
  int max_iters = 200;
  double tol = 1e-6;  // stop when max |gradient entry| <= tol
};

struct MaxEntTrainInfo {
  std::vector<double> objective;  // value after each accepted step
  double final_grad_max = 0.0;
  int iterations = 0;
  bool converged = false;  // gradient tolerance reached before the cap
};

typedef Eigen::SparseMatrix<double, Eigen::RowMajor> DesignMatrix;

// rows = examples.  All entries must be finite.
DesignMatrix build_design_matrix(const std::vector<SparseVector> &vectors);

// Mean negative log-likelihood plus (lambda/2)*||w||^2.  Exposed so the
// analytic gradient can be cross-checked against finite differences.
double maxent_objective(const Eigen::MatrixXd &w, const Eigen::VectorXd &b,
                        const DesignMatrix &x, const std::vector<int> &y,
                        double lambda);
void maxent_gradient(const Eigen::MatrixXd &w, const Eigen::VectorXd &b,
                     const DesignMatrix &x, const std::vector<int> &y,
                     double lambda, Eigen::MatrixXd *gw, Eigen::VectorXd *gb);

MaxEntModel train_maxent(const std::vector<SparseVector> &vectors,
                         const std::vector<std::string> &labels,
                         const MaxEntOptions &opts,
                         MaxEntTrainInfo *info = nullptr);

// Softmax posterior; sums to 1.
Eigen::VectorXd maxent_posterior(const MaxEntModel &m, const SparseVector &vec);

// Scores are log-posteriors.
Prediction maxent_classify(const MaxEntModel &m, const SparseVector &vec,
                           const std::string &id);

}  // namespace dialectid

#endif  // DIALECTID_CLASSIFIERS_MAXENT_H_
