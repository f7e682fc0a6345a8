// fusion/fuse.h

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

#ifndef DIALECTID_FUSION_FUSE_H_
#define DIALECTID_FUSION_FUSE_H_

#include <string>
#include <vector>

#include "dialectid/fusion/score_matrix.h"

namespace dialectid {

enum class NormMethod { kZscore, kMinmax };

std::string norm_method_name(NormMethod m);
NormMethod norm_method_from_name(const std::string &s);

// Whole-matrix normalization.  zscore: (s - mean)/std over all entries
// (population std); minmax: (s - min)/(max - min).  A constant matrix maps
// to all zeros under either method.
ScoreMatrix normalize_scores(const ScoreMatrix &m, NormMethod method);

// Elementwise weighted sum of the normalized systems.  Headers must match
// exactly; weights must be nonnegative and sum to 1 within 1e-9.  An empty
// weight list means equal weights.
ScoreMatrix fuse(const std::vector<ScoreMatrix> &systems,
                 std::vector<double> weights,
                 NormMethod method = NormMethod::kZscore);

}  // namespace dialectid

#endif  // DIALECTID_FUSION_FUSE_H_
