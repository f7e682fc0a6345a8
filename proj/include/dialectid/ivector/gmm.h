// ivector/gmm.h

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

#ifndef DIALECTID_IVECTOR_GMM_H_
#define DIALECTID_IVECTOR_GMM_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dialectid/core/serialize.h"

namespace dialectid {

// Diagonal-covariance GMM used as the universal background model.
struct GmmUbm {
  Eigen::VectorXd weights;  // K, sums to 1
  Eigen::MatrixXd means;    // K x F
  Eigen::MatrixXd vars;     // K x F, each entry >= its floor

  int num_components() const { return static_cast<int>(weights.size()); }
  int dim() const { return static_cast<int>(means.cols()); }

  void write(BinaryWriter *w) const;
  static GmmUbm read(BinaryReader *r);
};

struct UbmOptions {
  int components = 2048;
  int iters = 10;
  uint64_t seed = 0;
};

struct UbmTrainInfo {
  // Mean per-frame log-likelihood at the parameters entering each EM
  // iteration; non-decreasing.
  std::vector<double> log_likelihood;
};

// Per-frame posterior responsibilities, rows = frames, cols = components.
// Also returns the per-frame log-likelihoods if ll != nullptr.
Eigen::MatrixXd gmm_posteriors(const GmmUbm &g, const Eigen::MatrixXd &frames,
                               Eigen::VectorXd *ll = nullptr);

// k-means++ seeding followed by EM. The variance floor is
// 1e-3 x global per-dimension variance (kept strictly positive so constant
// dimensions stay evaluable).
GmmUbm train_ubm(const std::vector<Eigen::MatrixXd> &frame_mats,
                 const UbmOptions &opts, UbmTrainInfo *info = nullptr);

// Zeroth/first-order responsibility statistics for one utterance,
// first-order centered by the UBM means.
struct BaumWelchStats {
  Eigen::VectorXd n;  // K, n(k) >= 0, sum = frame count
  Eigen::MatrixXd f;  // K x F, f.row(k) = sum_t gamma_t(k) (x_t - mean_k)
};

BaumWelchStats accumulate_stats(const GmmUbm &g, const Eigen::MatrixXd &frames);

void save_ubm(const GmmUbm &g, const std::string &path);  // "UBM1"
GmmUbm load_ubm(const std::string &path);

}  // namespace dialectid

#endif  // DIALECTID_IVECTOR_GMM_H_
