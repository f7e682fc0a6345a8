// classifiers/linear_svm.cc

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

#include "dialectid/classifiers/linear_svm.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "dialectid/core/error.h"

namespace dialectid {

// Margin matrix: m(i,c) = y_ic * (w_c.x_i + b_c), y_ic = +/-1.
static Eigen::MatrixXd margins(const Eigen::MatrixXd &w,
                               const Eigen::VectorXd &b, const DesignMatrix &x,
                               const std::vector<int> &y) {
  Eigen::MatrixXd s = x * w.transpose();
  s.rowwise() += b.transpose();
  for (int i = 0; i < s.rows(); ++i)
    for (int c = 0; c < s.cols(); ++c)
      if (y[i] != c) s(i, c) = -s(i, c);
  return s;
}

double svm_objective(const Eigen::MatrixXd &w, const Eigen::VectorXd &b,
                     const DesignMatrix &x, const std::vector<int> &y,
                     double lambda) {
  const int n = static_cast<int>(x.rows());
  require(n == static_cast<int>(y.size()), "svm_objective: size mismatch");
  Eigen::MatrixXd m = margins(w, b, x, y);
  double hinge = (1.0 - m.array()).max(0.0).sum() / n;
  return 0.5 * lambda * (w.squaredNorm() + b.squaredNorm()) + hinge;
}

LinearSvmModel train_svm(const std::vector<SparseVector> &vectors,
                         const std::vector<std::string> &labels,
                         const SvmOptions &opts, SvmTrainInfo *info) {
  require(vectors.size() == labels.size(),
          "train_svm: vector/label count mismatch");
  require(opts.c_reg > 0.0, "train_svm: c_reg must be positive");
  require(opts.max_epochs >= 1, "train_svm: need at least one epoch");
  DesignMatrix x = build_design_matrix(vectors);
  const int n = static_cast<int>(x.rows());

  std::map<std::string, int> class_index;
  for (const auto &l : labels) {
    require(!l.empty(), "train_svm: unlabeled example");
    class_index.emplace(l, 0);
  }
  require(class_index.size() >= 2, "train_svm: need at least 2 classes");

  LinearSvmModel model;
  for (auto &kv : class_index) {
    kv.second = static_cast<int>(model.classes.size());
    model.classes.push_back(kv.first);
  }
  const int c = static_cast<int>(model.classes.size());
  model.dim = vectors.front().dim;
  model.c_reg = opts.c_reg;

  std::vector<int> y(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) y[i] = class_index[labels[i]];

  const double lambda = 1.0 / opts.c_reg;
  const double radius = 1.0 / std::sqrt(lambda);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(c, model.dim);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(c);
  Eigen::MatrixXd w_sum = Eigen::MatrixXd::Zero(c, model.dim);
  Eigen::VectorXd b_sum = Eigen::VectorXd::Zero(c);
  int sum_count = 0;
  const int suffix_start = opts.max_epochs / 2 + 1;  // 1-based epoch index

  Eigen::MatrixXd best_w = w;
  Eigen::VectorXd best_b = b;
  double best_obj = svm_objective(w, b, x, y, lambda);

  SvmTrainInfo local;
  SvmTrainInfo &ti = info ? *info : local;
  ti = SvmTrainInfo();

  for (int t = 1; t <= opts.max_epochs; ++t) {
    Eigen::MatrixXd m = margins(w, b, x, y);
    // Active set indicator: hinge is flat at margin >= 1.
    Eigen::MatrixXd act = (m.array() < 1.0).cast<double>();
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < c; ++k)
        if (y[i] != k) act(i, k) = -act(i, k);  // restore y_ic sign
    Eigen::MatrixXd gw = lambda * w - (act.transpose() * x) / n;
    Eigen::VectorXd gb = lambda * b - act.colwise().sum().transpose() / n;
    double eta = 1.0 / (lambda * t);
    w -= eta * gw;
    b -= eta * gb;
    for (int k = 0; k < c; ++k) {
      double norm = std::sqrt(w.row(k).squaredNorm() + b(k) * b(k));
      if (norm > radius) {
        w.row(k) *= radius / norm;
        b(k) *= radius / norm;
      }
    }
    Eigen::MatrixXd cand_w;
    Eigen::VectorXd cand_b;
    if (t >= suffix_start) {
      w_sum += w;
      b_sum += b;
      ++sum_count;
      cand_w = w_sum / sum_count;
      cand_b = b_sum / sum_count;
    } else {
      cand_w = w;
      cand_b = b;
    }
    double obj = svm_objective(cand_w, cand_b, x, y, lambda);
    if (obj < best_obj) {
      best_obj = obj;
      best_w = std::move(cand_w);
      best_b = std::move(cand_b);
    }
    ti.objective.push_back(best_obj);
  }
  model.weights = best_w;
  model.bias = best_b;
  return model;
}

Prediction svm_classify(const LinearSvmModel &m, const SparseVector &vec,
                        const std::string &id) {
  require(vec.dim == m.dim, "svm_classify: dimension mismatch");
  Eigen::VectorXd s = m.bias;
  for (const auto &e : vec.entries) s += e.second * m.weights.col(e.first);
  return make_prediction(id, m.classes,
                         std::vector<double>(s.data(), s.data() + s.size()));
}

void LinearSvmModel::write(BinaryWriter *w) const {
  w->vec_str(classes);
  w->u32(dim);
  w->matrix(weights);
  w->vector(bias);
  w->f64(c_reg);
}

LinearSvmModel LinearSvmModel::read(BinaryReader *r) {
  LinearSvmModel m;
  m.classes = r->vec_str();
  m.dim = r->u32();
  m.weights = r->matrix();
  m.bias = r->vector();
  m.c_reg = r->f64();
  return m;
}

}  // namespace dialectid
