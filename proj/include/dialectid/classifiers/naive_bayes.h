// classifiers/naive_bayes.h

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

#ifndef DIALECTID_CLASSIFIERS_NAIVE_BAYES_H_
#define DIALECTID_CLASSIFIERS_NAIVE_BAYES_H_

#include <string>
#include <vector>

#include <Eigen/Core>

#include "dialectid/classifiers/prediction.h"
#include "dialectid/core/serialize.h"
#include "dialectid/vsm/sparse.h"

namespace dialectid {

// Bernoulli Naive Bayes over binary presence vectors. Parameters use Laplace
// (+1/+2) smoothing so every theta lies strictly in (0,1) and log-space
// scoring never hits -inf:
//   theta_{c,i} = (count(x_i = 1, y = c) + 1) / (N_c + 2)
struct NaiveBayesModel {
  std::vector<std::string> classes;  // sorted labels
  uint32_t dim = 0;
  Eigen::VectorXd log_prior;       // C
  Eigen::MatrixXd log_theta;       // C x d
  Eigen::MatrixXd log_one_minus;   // C x d
  // log prior + sum_i log(1 - theta_{c,i}): the score of the all-zeros input.
  Eigen::VectorXd zero_score;

  void write(BinaryWriter *w) const;
  static NaiveBayesModel read(BinaryReader *r);
};

// vectors are binary presence vectors (values are ignored; stored indices
// count as present). Requires >= 2 classes, every class nonempty.
NaiveBayesModel train_naive_bayes(const std::vector<SparseVector> &vectors,
                                  const std::vector<std::string> &labels);

// Per-class score: log p(y=c) + sum_i [x_i ln theta + (1-x_i) ln(1-theta)].
Prediction nb_classify(const NaiveBayesModel &m, const SparseVector &vec,
                       const std::string &id = "");

}  // namespace dialectid

#endif  // DIALECTID_CLASSIFIERS_NAIVE_BAYES_H_
