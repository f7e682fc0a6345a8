// ivector/tv.cc

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

#include "dialectid/ivector/tv.h"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "dialectid/core/error.h"
#include "dialectid/core/rng.h"
#include "dialectid/core/serialize.h"

namespace dialectid {

using nlohmann::json;

namespace {

constexpr uint32_t kFormatVersion = 1;

void check_stats(const GmmUbm &ubm, const BaumWelchStats &s) {
  require(s.n.size() == ubm.num_components() &&
              s.f.rows() == ubm.num_components() && s.f.cols() == ubm.dim(),
          "statistics do not match the UBM layout");
  require(s.n.allFinite() && s.f.allFinite(), "non-finite statistics");
}

// L = I + sum_k n_k T_k' S_k^-1 T_k and b = T' S^-1 f for one utterance.
void posterior_precision(const GmmUbm &ubm, const Eigen::MatrixXd &t,
                         const std::vector<Eigen::MatrixXd> &gram,
                         const BaumWelchStats &s, Eigen::MatrixXd *l,
                         Eigen::VectorXd *b) {
  const int k = ubm.num_components();
  const int f = ubm.dim();
  const int r = static_cast<int>(t.cols());
  *l = Eigen::MatrixXd::Identity(r, r);
  *b = Eigen::VectorXd::Zero(r);
  for (int c = 0; c < k; ++c) {
    if (s.n(c) != 0.0) *l += s.n(c) * gram[c];
    *b += t.middleRows(c * f, f).transpose() *
          (s.f.row(c).transpose().array() / ubm.vars.row(c).transpose().array())
              .matrix();
  }
}

std::vector<Eigen::MatrixXd> block_grams(const GmmUbm &ubm,
                                         const Eigen::MatrixXd &t) {
  const int k = ubm.num_components();
  const int f = ubm.dim();
  std::vector<Eigen::MatrixXd> gram(k);
  for (int c = 0; c < k; ++c) {
    Eigen::MatrixXd tk = t.middleRows(c * f, f);
    gram[c] = tk.transpose() *
              ubm.vars.row(c).transpose().cwiseInverse().asDiagonal() * tk;
  }
  return gram;
}

}  // namespace

TvModel train_tv(const GmmUbm &ubm, const std::vector<BaumWelchStats> &stats,
                 const TvOptions &opts, TvTrainInfo *info) {
  const int k = ubm.num_components();
  const int f = ubm.dim();
  require(opts.rank >= 1, "train_tv: rank must be >= 1");
  require(opts.rank <= k * f,
          Msg() << "train_tv: rank " << opts.rank << " exceeds supervector "
                << "dimension " << k * f);
  require(static_cast<int>(stats.size()) >= opts.rank,
          Msg() << "train_tv: " << stats.size() << " utterances for rank "
                << opts.rank << "; need at least rank many");
  require(opts.iters >= 1, "train_tv: need at least one EM iteration");
  for (const auto &s : stats) check_stats(ubm, s);

  Rng rng(opts.seed);
  TvModel tv;
  tv.t.resize(k * f, opts.rank);
  for (Eigen::Index i = 0; i < tv.t.rows(); ++i)
    for (Eigen::Index j = 0; j < tv.t.cols(); ++j)
      tv.t(i, j) = 0.1 * rng.normal();

  TvTrainInfo local;
  TvTrainInfo &ti = info ? *info : local;
  ti = TvTrainInfo();

  const int r = opts.rank;
  for (int it = 0; it < opts.iters; ++it) {
    std::vector<Eigen::MatrixXd> gram = block_grams(ubm, tv.t);
    std::vector<Eigen::MatrixXd> a(k, Eigen::MatrixXd::Zero(r, r));
    std::vector<Eigen::MatrixXd> c_acc(k, Eigen::MatrixXd::Zero(f, r));
    double objective = 0.0;
    for (const auto &s : stats) {
      Eigen::MatrixXd l;
      Eigen::VectorXd b;
      posterior_precision(ubm, tv.t, gram, s, &l, &b);
      Eigen::LLT<Eigen::MatrixXd> llt(l);
      require(llt.info() == Eigen::Success,
              "train_tv: posterior precision not positive definite");
      Eigen::VectorXd ev = llt.solve(b);
      Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(r, r));
      Eigen::MatrixXd evv = cov + ev * ev.transpose();
      double logdet =
          2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
      objective += 0.5 * (b.dot(ev) - logdet);
      for (int c = 0; c < k; ++c) {
        if (s.n(c) != 0.0) a[c] += s.n(c) * evv;
        c_acc[c] += s.f.row(c).transpose() * ev.transpose();
      }
    }
    ti.objective.push_back(objective);

    for (int c = 0; c < k; ++c) {
      if (a[c].norm() < 1e-12) {
        if (c_acc[c].norm() < 1e-12) continue;  // unoccupied block: keep rows
        throw Error(Msg() << "train_tv: singular accumulator for component "
                          << "block " << c);
      }
      Eigen::LLT<Eigen::MatrixXd> llt(a[c]);
      if (llt.info() != Eigen::Success)
        throw Error(Msg() << "train_tv: singular accumulator for component "
                          << "block " << c);
      tv.t.middleRows(c * f, f) = llt.solve(c_acc[c].transpose()).transpose();
    }
  }
  return tv;
}

Eigen::VectorXd extract_ivector(const GmmUbm &ubm, const TvModel &tv,
                                const BaumWelchStats &stats) {
  check_stats(ubm, stats);
  require(tv.t.rows() == ubm.num_components() * ubm.dim(),
          "extract_ivector: subspace does not match the UBM layout");
  if (stats.n.isZero(0.0)) return Eigen::VectorXd::Zero(tv.rank());
  std::vector<Eigen::MatrixXd> gram = block_grams(ubm, tv.t);
  Eigen::MatrixXd l;
  Eigen::VectorXd b;
  posterior_precision(ubm, tv.t, gram, stats, &l, &b);
  Eigen::LLT<Eigen::MatrixXd> llt(l);
  require(llt.info() == Eigen::Success,
          "extract_ivector: posterior precision not positive definite");
  return llt.solve(b);
}

void save_tv(const TvModel &tv, const std::string &path) {
  auto os = open_out(path);
  BinaryWriter w(os);
  w.magic("TVM1");
  w.u32(kFormatVersion);
  w.u32(static_cast<uint32_t>(tv.rank()));
  w.matrix(tv.t);
  if (!os) throw Error(Msg() << "failed writing " << path);
}

TvModel load_tv(const std::string &path) {
  auto is = open_in(path);
  BinaryReader r(is);
  r.expect_magic("TVM1");
  uint32_t version = r.u32();
  if (version != kFormatVersion)
    throw Error(Msg() << path << ": unsupported TVM1 version " << version);
  uint32_t rank = r.u32();
  TvModel tv;
  tv.t = r.matrix();
  require(tv.t.cols() == rank, "TVM1 container: inconsistent rank");
  return tv;
}

void save_ivectors(const std::vector<IVector> &ivs, const std::string &path) {
  std::ofstream os(path);
  if (!os) throw Error(Msg() << "cannot open for writing: " << path);
  for (const auto &iv : ivs) {
    json j;
    j["id"] = iv.id;
    j["label"] = iv.label;
    j["vector"] = std::vector<double>(iv.v.data(), iv.v.data() + iv.v.size());
    os << j.dump() << '\n';
  }
  if (!os) throw Error(Msg() << "failed writing " << path);
}

std::vector<IVector> load_ivectors(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error(Msg() << "cannot open: " << path);
  std::vector<IVector> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception &e) {
      throw Error(Msg() << path << ":" << line_no << ": " << e.what());
    }
    IVector iv;
    try {
      iv.id = j.at("id").get<std::string>();
      iv.label = j.value("label", std::string());
      std::vector<double> v = j.at("vector").get<std::vector<double>>();
      iv.v = Eigen::Map<Eigen::VectorXd>(v.data(),
                                         static_cast<Eigen::Index>(v.size()));
    } catch (const json::exception &e) {
      throw Error(Msg() << path << ":" << line_no << ": " << e.what());
    }
    require(iv.v.allFinite(),
            Msg() << path << ":" << line_no << ": non-finite vector");
    out.push_back(std::move(iv));
  }
  return out;
}

}  // namespace dialectid
