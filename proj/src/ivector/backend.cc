// ivector/backend.cc

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

#include "dialectid/ivector/backend.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "dialectid/core/error.h"
#include "dialectid/core/serialize.h"

namespace dialectid {

namespace {

constexpr uint32_t kFormatVersion = 1;
constexpr double kShrinkLadder[] = {0.0, 1e-4, 1e-3, 1e-2};

struct Grouped {
  std::vector<std::string> classes;        // sorted
  std::vector<std::vector<int>> members;   // indices per class
  std::vector<Eigen::VectorXd> class_mean; // per class
  Eigen::VectorXd global_mean;
};

Grouped group_by_label(const std::vector<Eigen::VectorXd> &vectors,
                       const std::vector<std::string> &labels) {
  require(vectors.size() == labels.size(), "vector/label count mismatch");
  require(!vectors.empty(), "no vectors");
  const Eigen::Index dim = vectors.front().size();
  std::map<std::string, std::vector<int>> by;
  for (size_t i = 0; i < labels.size(); ++i) {
    require(!labels[i].empty(), "unlabeled vector");
    require(vectors[i].size() == dim, "inconsistent vector dimensions");
    require(vectors[i].allFinite(), "non-finite vector");
    by[labels[i]].push_back(static_cast<int>(i));
  }
  Grouped g;
  g.global_mean = Eigen::VectorXd::Zero(dim);
  for (auto &kv : by) {
    g.classes.push_back(kv.first);
    Eigen::VectorXd m = Eigen::VectorXd::Zero(dim);
    for (int i : kv.second) m += vectors[i];
    m /= static_cast<double>(kv.second.size());
    g.class_mean.push_back(std::move(m));
    g.members.push_back(std::move(kv.second));
  }
  for (const auto &v : vectors) g.global_mean += v;
  g.global_mean /= static_cast<double>(vectors.size());
  return g;
}

// Lower Cholesky of s, shrinking s toward tr(s)/dim * I only when the plain
// factorization fails; throws past the ladder cap.
Eigen::MatrixXd chol_lower_with_shrinkage(const Eigen::MatrixXd &s,
                                          const char *what) {
  const Eigen::Index d = s.rows();
  for (double eps : kShrinkLadder) {
    Eigen::MatrixXd m =
        (1.0 - eps) * s +
        eps * (s.trace() / static_cast<double>(d)) *
            Eigen::MatrixXd::Identity(d, d);
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) continue;
    Eigen::MatrixXd l = llt.matrixL();
    if (l.diagonal().minCoeff() <= 1e-12) continue;
    return l;
  }
  throw Error(Msg() << what << ": degenerate matrix, not fixable by "
                    << "shrinkage");
}

void fix_column_signs(Eigen::MatrixXd *m) {
  for (Eigen::Index c = 0; c < m->cols(); ++c) {
    Eigen::Index at = 0;
    m->col(c).cwiseAbs().maxCoeff(&at);
    if ((*m)(at, c) < 0.0) m->col(c) = -m->col(c);
  }
}

}  // namespace

LdaTransform fit_lda(const std::vector<Eigen::VectorXd> &vectors,
                     const std::vector<std::string> &labels, int p) {
  Grouped g = group_by_label(vectors, labels);
  const int c = static_cast<int>(g.classes.size());
  const Eigen::Index dim = vectors.front().size();
  require(c >= 2, "fit_lda: need at least 2 classes");
  require(p >= 1, "fit_lda: need p >= 1");
  require(p <= c - 1,
          Msg() << "fit_lda: p = " << p << " exceeds C-1 = " << c - 1);
  require(p <= dim, "fit_lda: p exceeds the input dimension");

  Eigen::MatrixXd sw = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd sb = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < c; ++k) {
    for (int i : g.members[k]) {
      Eigen::VectorXd d = vectors[i] - g.class_mean[k];
      sw += d * d.transpose();
    }
    Eigen::VectorXd d = g.class_mean[k] - g.global_mean;
    sb += static_cast<double>(g.members[k].size()) * d * d.transpose();
  }

  // Whiten by the within-class factor, then an ordinary symmetric
  // eigenproblem gives the generalized eigenvectors.
  Eigen::MatrixXd l = chol_lower_with_shrinkage(sw, "fit_lda");
  Eigen::MatrixXd li = l.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(dim, dim));
  Eigen::MatrixXd m = li * sb * li.transpose();
  m = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  require(eig.info() == Eigen::Success, "fit_lda: eigensolver failed");

  LdaTransform t;
  t.projection.resize(dim, p);
  t.eigenvalues.resize(p);
  for (int j = 0; j < p; ++j) {
    Eigen::Index src = dim - 1 - j;  // ascending order in the solver
    t.eigenvalues(j) = eig.eigenvalues()(src);
    t.projection.col(j) = li.transpose() * eig.eigenvectors().col(src);
  }
  fix_column_signs(&t.projection);
  t.mean_shift = g.global_mean;
  return t;
}

WccnTransform fit_wccn(const std::vector<Eigen::VectorXd> &vectors,
                       const std::vector<std::string> &labels) {
  Grouped g = group_by_label(vectors, labels);
  const int c = static_cast<int>(g.classes.size());
  const Eigen::Index dim = vectors.front().size();
  bool any_repeat = false;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < c; ++k) {
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
    for (int i : g.members[k]) {
      Eigen::VectorXd d = vectors[i] - g.class_mean[k];
      cov += d * d.transpose();
    }
    cov /= static_cast<double>(g.members[k].size());
    if (g.members[k].size() >= 2) any_repeat = true;
    w += cov;
  }
  w /= static_cast<double>(c);
  require(any_repeat, "fit_wccn: every class has a single example");

  Eigen::MatrixXd l = chol_lower_with_shrinkage(w, "fit_wccn");
  // W^-1 from the factor, then its own lower Cholesky factor.
  Eigen::MatrixXd li = l.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(dim, dim));
  Eigen::MatrixXd w_inv = li.transpose() * li;
  w_inv = 0.5 * (w_inv + w_inv.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(w_inv);
  require(llt.info() == Eigen::Success,
          "fit_wccn: inverse covariance not positive definite");
  WccnTransform t;
  t.b = llt.matrixL();
  return t;
}

Eigen::VectorXd length_normalize(const Eigen::VectorXd &v) {
  double n = v.norm();
  require(n > 0.0, "length_normalize: zero vector");
  return v / n;
}

double cosine_score(const Eigen::VectorXd &a, const Eigen::VectorXd &b) {
  require(a.size() == b.size(), "cosine_score: dimension mismatch");
  double na = a.norm(), nb = b.norm();
  require(na > 0.0 && nb > 0.0, "cosine_score: zero vector");
  return a.dot(b) / (na * nb);
}

Eigen::VectorXd BackendChain::apply(const Eigen::VectorXd &x) const {
  Eigen::VectorXd y = x;
  if (lda) y = lda->apply(y);
  if (wccn) y = wccn->apply(y);
  if (length_norm) y = length_normalize(y);
  return y;
}

CosineBackend fit_backend(const std::vector<IVector> &ivectors,
                          const BackendOptions &opts) {
  std::vector<Eigen::VectorXd> vectors;
  std::vector<std::string> labels;
  vectors.reserve(ivectors.size());
  for (const auto &iv : ivectors) {
    require(!iv.label.empty(),
            Msg() << "fit_backend: vector '" << iv.id << "' has no label");
    vectors.push_back(iv.v);
    labels.push_back(iv.label);
  }

  CosineBackend be;
  if (opts.use_lda) {
    std::map<std::string, int> uniq;
    for (const auto &l : labels) uniq.emplace(l, 0);
    int p = opts.lda_dim > 0 ? opts.lda_dim
                             : static_cast<int>(uniq.size()) - 1;
    be.chain.lda = fit_lda(vectors, labels, p);
    for (auto &v : vectors) v = be.chain.lda->apply(v);
  }
  if (opts.use_wccn) {
    be.chain.wccn = fit_wccn(vectors, labels);
    for (auto &v : vectors) v = be.chain.wccn->apply(v);
  }
  be.chain.length_norm = opts.use_length_norm;
  if (opts.use_length_norm)
    for (auto &v : vectors) v = length_normalize(v);

  Grouped g = group_by_label(vectors, labels);
  require(g.classes.size() >= 2, "fit_backend: need at least 2 classes");
  be.classes = g.classes;
  be.class_means.resize(static_cast<Eigen::Index>(g.classes.size()),
                        vectors.front().size());
  for (size_t k = 0; k < g.classes.size(); ++k)
    be.class_means.row(static_cast<Eigen::Index>(k)) =
        length_normalize(g.class_mean[k]).transpose();
  return be;
}

Prediction backend_classify(const CosineBackend &be, const Eigen::VectorXd &v,
                            const std::string &id) {
  Eigen::VectorXd y = be.chain.apply(v);
  std::vector<double> scores(be.classes.size());
  for (size_t k = 0; k < be.classes.size(); ++k)
    scores[k] =
        cosine_score(y, be.class_means.row(static_cast<Eigen::Index>(k))
                            .transpose());
  return make_prediction(id, be.classes, scores);
}

void save_backend(const CosineBackend &be, const std::string &path) {
  auto os = open_out(path);
  BinaryWriter w(os);
  w.magic("BKE1");
  w.u32(kFormatVersion);
  w.u32(be.chain.lda ? 1 : 0);
  if (be.chain.lda) {
    w.matrix(be.chain.lda->projection);
    w.vector(be.chain.lda->mean_shift);
    w.vector(be.chain.lda->eigenvalues);
  }
  w.u32(be.chain.wccn ? 1 : 0);
  if (be.chain.wccn) w.matrix(be.chain.wccn->b);
  w.u32(be.chain.length_norm ? 1 : 0);
  w.vec_str(be.classes);
  w.matrix(be.class_means);
  if (!os) throw Error(Msg() << "failed writing " << path);
}

CosineBackend load_backend(const std::string &path) {
  auto is = open_in(path);
  BinaryReader r(is);
  r.expect_magic("BKE1");
  uint32_t version = r.u32();
  if (version != kFormatVersion)
    throw Error(Msg() << path << ": unsupported BKE1 version " << version);
  CosineBackend be;
  if (r.u32() != 0) {
    LdaTransform t;
    t.projection = r.matrix();
    t.mean_shift = r.vector();
    t.eigenvalues = r.vector();
    be.chain.lda = std::move(t);
  }
  if (r.u32() != 0) {
    WccnTransform t;
    t.b = r.matrix();
    be.chain.wccn = std::move(t);
  }
  be.chain.length_norm = r.u32() != 0;
  be.classes = r.vec_str();
  be.class_means = r.matrix();
  return be;
}

}  // namespace dialectid
