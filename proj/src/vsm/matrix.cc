// vsm/matrix.cc

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

#include "dialectid/vsm/matrix.h"

#include <cmath>

#include "dialectid/core/error.h"

namespace dialectid {

VsmMatrix build_count_matrix(const Dataset &d, const Vocabulary &v) {
  VsmMatrix m;
  m.dim = v.size();
  m.ids.reserve(d.size());
  m.columns.reserve(d.size());
  for (const auto &u : d.utterances) {
    m.ids.push_back(u.id);
    m.columns.push_back(count_vector(extract_tokens(u, v.spec()), v));
  }
  return m;
}

ScalingSpec fit_idf(const VsmMatrix &raw_counts) {
  require(raw_counts.num_columns() >= 1, "fit_idf: need at least one column");
  const double n = static_cast<double>(raw_counts.num_columns());
  std::vector<size_t> df(raw_counts.dim, 0);
  for (const auto &col : raw_counts.columns)
    for (const auto &e : col.entries) df[e.first] += 1;

  ScalingSpec s;
  s.kind = ScalingSpec::kTfidf;
  s.idf.resize(raw_counts.dim, 0.0);
  for (uint32_t i = 0; i < raw_counts.dim; ++i)
    if (df[i] > 0) s.idf[i] = std::log(n / static_cast<double>(df[i]));
  return s;
}

VsmMatrix build_matrix(const Dataset &d, const Vocabulary &v,
                       const ScalingSpec &s) {
  if (s.kind == ScalingSpec::kTfidf)
    require(s.idf.size() == v.size(),
            "build_matrix: scaling fitted for a different vocabulary");
  VsmMatrix m;
  m.dim = v.size();
  m.ids.reserve(d.size());
  m.columns.reserve(d.size());
  for (const auto &u : d.utterances) {
    m.ids.push_back(u.id);
    m.columns.push_back(
        apply_scaling(count_vector(extract_tokens(u, v.spec()), v), s));
  }
  return m;
}

}  // namespace dialectid
