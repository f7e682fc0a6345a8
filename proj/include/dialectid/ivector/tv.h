// ivector/tv.h

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

#ifndef DIALECTID_IVECTOR_TV_H_
#define DIALECTID_IVECTOR_TV_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dialectid/ivector/gmm.h"

namespace dialectid {

// Total-variability subspace: supervector offsets live in M = u + T v with
// v a standard-normal latent factor.  T is (K*F) x R, block k = rows
// [k*F, (k+1)*F).
struct TvModel {
  Eigen::MatrixXd t;

  int rank() const { return static_cast<int>(t.cols()); }
};

struct TvOptions {
  int rank = 400;
  int iters = 5;
  uint64_t seed = 0;
};

struct TvTrainInfo {
  // Sum over utterances of 0.5*(b' L^-1 b - logdet L) at the T entering each
  // iteration: the T-dependent part of the marginal log-likelihood of the
  // statistics.  Non-decreasing under EM.
  std::vector<double> objective;
};

// ML EM for T.  Init is seeded standard normal * 0.1; no minimum-divergence
// re-estimation.  Blocks with zero accumulators (unoccupied components) keep
// their current rows; a singular accumulator with nonzero first-order terms
// is reported with its block index.
TvModel train_tv(const GmmUbm &ubm, const std::vector<BaumWelchStats> &stats,
                 const TvOptions &opts, TvTrainInfo *info = nullptr);

// MAP point estimate v = (I + T' S^-1 N T)^-1 T' S^-1 f, with N the
// block-diagonal expansion of the zeroth-order stats and S the UBM
// covariances.  Zero statistics give the prior mean (zero vector).
Eigen::VectorXd extract_ivector(const GmmUbm &ubm, const TvModel &tv,
                                const BaumWelchStats &stats);

void save_tv(const TvModel &tv, const std::string &path);  // "TVM1"
TvModel load_tv(const std::string &path);

// JSON Lines archives of {id, label, vector}.
struct IVector {
  std::string id;
  std::string label;  // may be empty
  Eigen::VectorXd v;
};

void save_ivectors(const std::vector<IVector> &ivs, const std::string &path);
std::vector<IVector> load_ivectors(const std::string &path);

}  // namespace dialectid

#endif  // DIALECTID_IVECTOR_TV_H_
