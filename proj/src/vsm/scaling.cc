// vsm/scaling.cc

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

#include "dialectid/vsm/scaling.h"

#include "dialectid/core/error.h"

namespace dialectid {

std::string scaling_kind_name(ScalingSpec::Kind k) {
  return k == ScalingSpec::kIdentity ? "identity" : "tfidf";
}

ScalingSpec::Kind scaling_kind_from_name(const std::string &name) {
  if (name == "identity") return ScalingSpec::kIdentity;
  if (name == "tfidf") return ScalingSpec::kTfidf;
  throw Error(Msg() << "unknown scaling \"" << name
                    << "\" (expected identity|tfidf)");
}

SparseVector apply_scaling(const SparseVector &raw_counts,
                           const ScalingSpec &s) {
  if (s.kind == ScalingSpec::kIdentity) return raw_counts;
  require(s.idf.size() == raw_counts.dim,
          "apply_scaling: idf length does not match vector dimension");
  for (double w : s.idf)
    require(w >= 0.0, "apply_scaling: negative idf weight");
  SparseVector out;
  out.dim = raw_counts.dim;
  out.entries.reserve(raw_counts.entries.size());
  for (const auto &e : raw_counts.entries) {
    double v = e.second * s.idf[e.first];
    if (v != 0.0) out.entries.emplace_back(e.first, v);
  }
  return out;
}

}  // namespace dialectid
