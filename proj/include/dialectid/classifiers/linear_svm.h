// classifiers/linear_svm.h

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

#ifndef DIALECTID_CLASSIFIERS_LINEAR_SVM_H_
#define DIALECTID_CLASSIFIERS_LINEAR_SVM_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dialectid/classifiers/maxent.h"  // DesignMatrix
#include "dialectid/classifiers/prediction.h"
#include "dialectid/core/serialize.h"
#include "dialectid/vsm/sparse.h"

namespace dialectid {

// One-vs-rest linear SVM trained by a projected-subgradient scheme in the
// primal.  Each epoch takes one full-batch subgradient step with step size
// 1/(lambda*t) where lambda = 1/c_reg (per-point-averaged hinge, so the
// objective and the trajectory are invariant to duplicating the training
// set), projects onto the ball of radius 1/sqrt(lambda), and averages the
// iterates of the second half of the run.  Subgradient steps are not
// monotone, so the model kept — and the per-epoch objective reported — is
// the best candidate seen so far, which makes the reported sequence
// non-increasing without changing the convergence guarantee.  The batch is
// the whole training set, so the run is deterministic; the seed is accepted
// for interface symmetry and recorded but not consumed.
struct LinearSvmModel {
  std::vector<std::string> classes;  // sorted by label
  uint32_t dim = 0;
  Eigen::MatrixXd weights;  // classes x dim
  Eigen::VectorXd bias;     // classes (regularized as an extra coordinate)
  double c_reg = 1.0;

  void write(BinaryWriter *w) const;
  static LinearSvmModel read(BinaryReader *r);
};

struct SvmOptions {
  double c_reg = 1.0;  // > 0; l2 strength is 1/c_reg
  int max_epochs = 200;
  uint64_t seed = 0;
};

struct SvmTrainInfo {
  std::vector<double> objective;  // per epoch, non-increasing
};

// Sum over classes of (lambda/2)*(||w_c||^2 + b_c^2)
//   + mean_i max(0, 1 - y_ic * (w_c.x_i + b_c)).
double svm_objective(const Eigen::MatrixXd &w, const Eigen::VectorXd &b,
                     const DesignMatrix &x, const std::vector<int> &y,
                     double lambda);

LinearSvmModel train_svm(const std::vector<SparseVector> &vectors,
                         const std::vector<std::string> &labels,
                         const SvmOptions &opts, SvmTrainInfo *info = nullptr);

// Scores are the affine per-class margins w_c.x + b_c.
Prediction svm_classify(const LinearSvmModel &m, const SparseVector &vec,
                        const std::string &id);

}  // namespace dialectid

#endif  // DIALECTID_CLASSIFIERS_LINEAR_SVM_H_
