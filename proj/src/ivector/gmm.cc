// ivector/gmm.cc

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

#include "dialectid/ivector/gmm.h"

#include <cmath>

#include "dialectid/core/error.h"
#include "dialectid/core/rng.h"

namespace dialectid {

namespace {

constexpr uint32_t kFormatVersion = 1;
constexpr double kFloorScale = 1e-3;
constexpr double kMinVar = 1e-10;

// Per-frame per-component log N(x | m_k, diag v_k) + log w_k, via the
// expansion (x-m)^2/v = x^2/v - 2 x m/v + m^2/v so everything is a GEMM.
Eigen::MatrixXd log_joint(const GmmUbm &g, const Eigen::MatrixXd &x) {
  Eigen::MatrixXd inv_v = g.vars.cwiseInverse();           // K x F
  Eigen::MatrixXd m_over_v = g.means.cwiseProduct(inv_v);  // K x F
  Eigen::VectorXd konst =
      -0.5 * (g.vars.array().log() + std::log(2.0 * M_PI)).rowwise().sum() -
      0.5 * g.means.cwiseProduct(m_over_v).rowwise().sum().array();
  Eigen::MatrixXd lj =
      x * m_over_v.transpose() - 0.5 * x.cwiseAbs2() * inv_v.transpose();
  lj.rowwise() += (konst + g.weights.array().log().matrix()).transpose();
  return lj;  // T x K
}

}  // namespace

Eigen::MatrixXd gmm_posteriors(const GmmUbm &g, const Eigen::MatrixXd &frames,
                               Eigen::VectorXd *ll) {
  require(frames.cols() == g.dim(), "gmm_posteriors: frame width mismatch");
  Eigen::MatrixXd lj = log_joint(g, frames);
  Eigen::VectorXd mx = lj.rowwise().maxCoeff();
  Eigen::MatrixXd p = (lj.colwise() - mx).array().exp();
  Eigen::VectorXd z = p.rowwise().sum();
  p = p.array().colwise() / z.array();
  if (ll) *ll = z.array().log() + mx.array();
  return p;
}

GmmUbm train_ubm(const std::vector<Eigen::MatrixXd> &frame_mats,
                 const UbmOptions &opts, UbmTrainInfo *info) {
  require(opts.components >= 1, "train_ubm: need K >= 1");
  require(opts.iters >= 1, "train_ubm: need at least one EM iteration");
  Eigen::Index total = 0, dim = -1;
  for (const auto &m : frame_mats) {
    if (m.rows() == 0) continue;
    if (dim < 0) dim = m.cols();
    require(m.cols() == dim, "train_ubm: inconsistent frame widths");
    total += m.rows();
  }
  require(dim > 0, "train_ubm: no frames");
  require(total >= 10 * static_cast<Eigen::Index>(opts.components),
          Msg() << "train_ubm: " << total << " frames for K="
                << opts.components << "; need at least 10*K");

  Eigen::MatrixXd x(total, dim);
  Eigen::Index at = 0;
  for (const auto &m : frame_mats) {
    if (m.rows() == 0) continue;
    x.middleRows(at, m.rows()) = m;
    at += m.rows();
  }
  require(x.allFinite(), "train_ubm: non-finite frame values");

  const int k = opts.components;
  const int n = static_cast<int>(total);
  Eigen::RowVectorXd gmean = x.colwise().mean();
  Eigen::RowVectorXd gvar =
      (x.rowwise() - gmean).cwiseAbs2().colwise().mean();
  Eigen::RowVectorXd floor = (kFloorScale * gvar).cwiseMax(kMinVar);

  GmmUbm g;
  g.weights = Eigen::VectorXd::Constant(k, 1.0 / k);
  g.means.resize(k, dim);
  g.vars = gvar.cwiseMax(floor).replicate(k, 1);

  // k-means++ seeding: first center uniform, the rest proportional to the
  // squared distance to the nearest chosen center.
  Rng rng(opts.seed);
  g.means.row(0) = x.row(static_cast<Eigen::Index>(rng.uniform_int(n)));
  Eigen::VectorXd d2 =
      (x.rowwise() - g.means.row(0)).cwiseAbs2().rowwise().sum();
  for (int c = 1; c < k; ++c) {
    std::vector<double> w(d2.data(), d2.data() + n);
    size_t pick;
    double total_w = 0.0;
    for (double v : w) total_w += v;
    if (total_w > 0.0) {
      pick = rng.sample_discrete(w);
    } else {
      pick = static_cast<size_t>(rng.uniform_int(n));  // all points coincide
    }
    g.means.row(c) = x.row(static_cast<Eigen::Index>(pick));
    d2 = d2.cwiseMin(
        (x.rowwise() - g.means.row(c)).cwiseAbs2().rowwise().sum());
  }

  UbmTrainInfo local;
  UbmTrainInfo &ti = info ? *info : local;
  ti = UbmTrainInfo();

  for (int it = 0; it < opts.iters; ++it) {
    Eigen::VectorXd ll;
    Eigen::MatrixXd gamma = gmm_posteriors(g, x, &ll);  // n x k
    ti.log_likelihood.push_back(ll.mean());
    Eigen::VectorXd nk = gamma.colwise().sum();             // k
    Eigen::MatrixXd sx = gamma.transpose() * x;             // k x dim
    Eigen::MatrixXd sxx = gamma.transpose() * x.cwiseAbs2();
    for (int c = 0; c < k; ++c) {
      if (nk(c) < 1e-10) continue;  // starved component keeps its parameters
      g.means.row(c) = sx.row(c) / nk(c);
      g.vars.row(c) =
          (sxx.row(c) / nk(c) - g.means.row(c).cwiseAbs2()).cwiseMax(floor);
    }
    g.weights = nk / n;
  }
  return g;
}

BaumWelchStats accumulate_stats(const GmmUbm &g,
                                const Eigen::MatrixXd &frames) {
  require(frames.cols() == g.dim() || frames.rows() == 0,
          "accumulate_stats: frame width mismatch");
  BaumWelchStats s;
  s.n = Eigen::VectorXd::Zero(g.num_components());
  s.f = Eigen::MatrixXd::Zero(g.num_components(), g.dim());
  if (frames.rows() == 0) return s;
  Eigen::MatrixXd gamma = gmm_posteriors(g, frames);
  s.n = gamma.colwise().sum();
  s.f = gamma.transpose() * frames;
  s.f -= s.n.asDiagonal() * g.means;
  return s;
}

void GmmUbm::write(BinaryWriter *w) const {
  w->u32(static_cast<uint32_t>(num_components()));
  w->u32(static_cast<uint32_t>(dim()));
  w->vector(weights);
  w->matrix(means);
  w->matrix(vars);
}

GmmUbm GmmUbm::read(BinaryReader *r) {
  uint32_t k = r->u32();
  uint32_t f = r->u32();
  GmmUbm g;
  g.weights = r->vector();
  g.means = r->matrix();
  g.vars = r->matrix();
  require(g.weights.size() == k && g.means.rows() == k &&
              g.means.cols() == f && g.vars.rows() == k && g.vars.cols() == f,
          "UBM container: inconsistent shapes");
  return g;
}

void save_ubm(const GmmUbm &g, const std::string &path) {
  auto os = open_out(path);
  BinaryWriter w(os);
  w.magic("UBM1");
  w.u32(kFormatVersion);
  g.write(&w);
  if (!os) throw Error(Msg() << "failed writing " << path);
}

GmmUbm load_ubm(const std::string &path) {
  auto is = open_in(path);
  BinaryReader r(is);
  r.expect_magic("UBM1");
  uint32_t version = r.u32();
  if (version != kFormatVersion)
    throw Error(Msg() << path << ": unsupported UBM1 version " << version);
  return GmmUbm::read(&r);
}

}  // namespace dialectid
