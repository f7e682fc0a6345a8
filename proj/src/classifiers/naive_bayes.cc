// classifiers/naive_bayes.cc

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

#include "dialectid/classifiers/naive_bayes.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "dialectid/core/error.h"

namespace dialectid {

NaiveBayesModel train_naive_bayes(const std::vector<SparseVector> &vectors,
                                  const std::vector<std::string> &labels) {
  require(vectors.size() == labels.size(),
          "train_naive_bayes: vector/label count mismatch");
  require(!vectors.empty(), "train_naive_bayes: empty training set");

  std::map<std::string, int> class_index;
  for (const auto &l : labels) {
    require(!l.empty(), "train_naive_bayes: unlabeled example");
    class_index.emplace(l, 0);
  }
  require(class_index.size() >= 2, "train_naive_bayes: need at least 2 classes");

  NaiveBayesModel m;
  for (auto &kv : class_index) {
    kv.second = static_cast<int>(m.classes.size());
    m.classes.push_back(kv.first);
  }
  const int c = static_cast<int>(m.classes.size());
  m.dim = vectors.front().dim;

  Eigen::VectorXd class_count = Eigen::VectorXd::Zero(c);
  Eigen::MatrixXd present = Eigen::MatrixXd::Zero(c, m.dim);
  for (size_t i = 0; i < vectors.size(); ++i) {
    require(vectors[i].dim == m.dim,
            "train_naive_bayes: inconsistent vector dimensions");
    int y = class_index[labels[i]];
    class_count(y) += 1.0;
    for (const auto &e : vectors[i].entries) present(y, e.first) += 1.0;
  }

  const double n = static_cast<double>(vectors.size());
  m.log_prior = (class_count / n).array().log();
  m.log_theta.resize(c, m.dim);
  m.log_one_minus.resize(c, m.dim);
  for (int y = 0; y < c; ++y) {
    double denom = class_count(y) + 2.0;
    for (uint32_t i = 0; i < m.dim; ++i) {
      double theta = (present(y, i) + 1.0) / denom;
      m.log_theta(y, i) = std::log(theta);
      m.log_one_minus(y, i) = std::log1p(-theta);
    }
  }
  m.zero_score = m.log_prior + m.log_one_minus.rowwise().sum();
  return m;
}

Prediction nb_classify(const NaiveBayesModel &m, const SparseVector &vec,
                       const std::string &id) {
  require(vec.dim == m.dim, "nb_classify: dimension mismatch");
  Eigen::VectorXd score = m.zero_score;
  for (const auto &e : vec.entries)
    score += m.log_theta.col(e.first) - m.log_one_minus.col(e.first);
  return make_prediction(
      id, m.classes,
      std::vector<double>(score.data(), score.data() + score.size()));
}

void NaiveBayesModel::write(BinaryWriter *w) const {
  w->vec_str(classes);
  w->u32(dim);
  w->vector(log_prior);
  w->matrix(log_theta);
  w->matrix(log_one_minus);
  w->vector(zero_score);
}

NaiveBayesModel NaiveBayesModel::read(BinaryReader *r) {
  NaiveBayesModel m;
  m.classes = r->vec_str();
  m.dim = r->u32();
  m.log_prior = r->vector();
  m.log_theta = r->matrix();
  m.log_one_minus = r->matrix();
  m.zero_score = r->vector();
  return m;
}

}  // namespace dialectid
