// vsm/scaling.h

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

#ifndef DIALECTID_VSM_SCALING_H_
#define DIALECTID_VSM_SCALING_H_

#include <string>
#include <vector>

#include "dialectid/vsm/sparse.h"

namespace dialectid {

// The per-token scaling applied on top of raw counts. tf-idf is raw count
// times ln(N/df); a token in every column gets weight 0, as does a token in
// none (df = 0 convention).
struct ScalingSpec {
  enum Kind { kIdentity = 0, kTfidf = 1 };
  Kind kind = kIdentity;
  std::vector<double> idf;  // per-token, required iff kind == kTfidf

  static ScalingSpec identity() { return ScalingSpec{}; }
};

std::string scaling_kind_name(ScalingSpec::Kind k);
ScalingSpec::Kind scaling_kind_from_name(const std::string &name);

SparseVector apply_scaling(const SparseVector &raw_counts,
                           const ScalingSpec &s);

}  // namespace dialectid

#endif  // DIALECTID_VSM_SCALING_H_
