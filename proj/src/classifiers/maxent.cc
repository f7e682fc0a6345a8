// classifiers/maxent.cc

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

#include "dialectid/classifiers/maxent.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "dialectid/core/error.h"

namespace dialectid {

DesignMatrix build_design_matrix(const std::vector<SparseVector> &vectors) {
  require(!vectors.empty(), "build_design_matrix: no examples");
  const uint32_t dim = vectors.front().dim;
  std::vector<Eigen::Triplet<double>> trip;
  for (size_t i = 0; i < vectors.size(); ++i) {
    require(vectors[i].dim == dim,
            "build_design_matrix: inconsistent dimensions");
    for (const auto &e : vectors[i].entries) {
      require(std::isfinite(e.second),
              "build_design_matrix: non-finite feature value");
      trip.emplace_back(static_cast<int>(i), static_cast<int>(e.first),
                        e.second);
    }
  }
  DesignMatrix x(static_cast<int>(vectors.size()), static_cast<int>(dim));
  x.setFromTriplets(trip.begin(), trip.end());
  return x;
}

// log-sum-exp rows of s; optionally also writes softmax rows to p.
static Eigen::VectorXd row_log_sum_exp(const Eigen::MatrixXd &s,
                                       Eigen::MatrixXd *p) {
  Eigen::VectorXd mx = s.rowwise().maxCoeff();
  Eigen::MatrixXd e = (s.colwise() - mx).array().exp();
  Eigen::VectorXd z = e.rowwise().sum();
  if (p) *p = e.array().colwise() / z.array();
  return z.array().log() + mx.array();
}

double maxent_objective(const Eigen::MatrixXd &w, const Eigen::VectorXd &b,
                        const DesignMatrix &x, const std::vector<int> &y,
                        double lambda) {
  const int n = static_cast<int>(x.rows());
  require(n == static_cast<int>(y.size()), "maxent_objective: size mismatch");
  Eigen::MatrixXd s = x * w.transpose();  // n x C
  s.rowwise() += b.transpose();
  Eigen::VectorXd lse = row_log_sum_exp(s, nullptr);
  double nll = 0.0;
  for (int i = 0; i < n; ++i) nll += lse(i) - s(i, y[i]);
  return nll / n + 0.5 * lambda * w.squaredNorm();
}

void maxent_gradient(const Eigen::MatrixXd &w, const Eigen::VectorXd &b,
                     const DesignMatrix &x, const std::vector<int> &y,
                     double lambda, Eigen::MatrixXd *gw, Eigen::VectorXd *gb) {
  const int n = static_cast<int>(x.rows());
  require(n == static_cast<int>(y.size()), "maxent_gradient: size mismatch");
  Eigen::MatrixXd s = x * w.transpose();
  s.rowwise() += b.transpose();
  Eigen::MatrixXd p;  // n x C softmax
  row_log_sum_exp(s, &p);
  for (int i = 0; i < n; ++i) p(i, y[i]) -= 1.0;
  *gw = (p.transpose() * x) / n + lambda * w;
  *gb = p.colwise().sum().transpose() / n;
}

MaxEntModel train_maxent(const std::vector<SparseVector> &vectors,
                         const std::vector<std::string> &labels,
                         const MaxEntOptions &opts, MaxEntTrainInfo *info) {
  require(vectors.size() == labels.size(),
          "train_maxent: vector/label count mismatch");
  require(opts.lambda >= 0.0, "train_maxent: negative l2 strength");
  DesignMatrix x = build_design_matrix(vectors);

  std::map<std::string, int> class_index;
  for (const auto &l : labels) {
    require(!l.empty(), "train_maxent: unlabeled example");
    class_index.emplace(l, 0);
  }
  require(class_index.size() >= 2, "train_maxent: need at least 2 classes");

  MaxEntModel m;
  for (auto &kv : class_index) {
    kv.second = static_cast<int>(m.classes.size());
    m.classes.push_back(kv.first);
  }
  const int c = static_cast<int>(m.classes.size());
  m.dim = vectors.front().dim;
  m.lambda = opts.lambda;
  m.weights = Eigen::MatrixXd::Zero(c, m.dim);
  m.bias = Eigen::VectorXd::Zero(c);

  std::vector<int> y(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) y[i] = class_index[labels[i]];

  MaxEntTrainInfo local;
  MaxEntTrainInfo &ti = info ? *info : local;
  ti = MaxEntTrainInfo();

  double obj = maxent_objective(m.weights, m.bias, x, y, opts.lambda);
  Eigen::MatrixXd gw;
  Eigen::VectorXd gb;
  double step = 1.0;
  for (int it = 0; it < opts.max_iters; ++it) {
    maxent_gradient(m.weights, m.bias, x, y, opts.lambda, &gw, &gb);
    double gmax = std::max(gw.cwiseAbs().maxCoeff(), gb.cwiseAbs().maxCoeff());
    ti.final_grad_max = gmax;
    if (gmax <= opts.tol) {
      ti.converged = true;
      break;
    }
    // Armijo backtracking along the steepest-descent direction.
    double gsq = gw.squaredNorm() + gb.squaredNorm();
    double alpha = std::min(step * 2.0, 1e4);
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      Eigen::MatrixXd w_try = m.weights - alpha * gw;
      Eigen::VectorXd b_try = m.bias - alpha * gb;
      double obj_try = maxent_objective(w_try, b_try, x, y, opts.lambda);
      if (obj_try <= obj - 1e-4 * alpha * gsq) {
        m.weights = std::move(w_try);
        m.bias = std::move(b_try);
        obj = obj_try;
        step = alpha;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // no further decrease representable
    ti.iterations = it + 1;
    ti.objective.push_back(obj);
  }
  if (!ti.converged && ti.iterations > 0) {
    maxent_gradient(m.weights, m.bias, x, y, opts.lambda, &gw, &gb);
    ti.final_grad_max =
        std::max(gw.cwiseAbs().maxCoeff(), gb.cwiseAbs().maxCoeff());
    ti.converged = ti.final_grad_max <= opts.tol;
  }
  return m;
}

Eigen::VectorXd maxent_posterior(const MaxEntModel &m,
                                 const SparseVector &vec) {
  require(vec.dim == m.dim, "maxent_posterior: dimension mismatch");
  Eigen::VectorXd s = m.bias;
  for (const auto &e : vec.entries) s += e.second * m.weights.col(e.first);
  Eigen::VectorXd ex = (s.array() - s.maxCoeff()).exp();
  return ex / ex.sum();
}

Prediction maxent_classify(const MaxEntModel &m, const SparseVector &vec,
                           const std::string &id) {
  Eigen::VectorXd p = maxent_posterior(m, vec).array().log();
  return make_prediction(id, m.classes,
                         std::vector<double>(p.data(), p.data() + p.size()));
}

void MaxEntModel::write(BinaryWriter *w) const {
  w->vec_str(classes);
  w->u32(dim);
  w->matrix(weights);
  w->vector(bias);
  w->f64(lambda);
}

MaxEntModel MaxEntModel::read(BinaryReader *r) {
  MaxEntModel m;
  m.classes = r->vec_str();
  m.dim = r->u32();
  m.weights = r->matrix();
  m.bias = r->vector();
  m.lambda = r->f64();
  return m;
}

}  // namespace dialectid
