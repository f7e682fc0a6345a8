// vsm/matrix.h

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

#ifndef DIALECTID_VSM_MATRIX_H_
#define DIALECTID_VSM_MATRIX_H_

#include <string>
#include <vector>

#include "dialectid/corpus/dataset.h"
#include "dialectid/vsm/scaling.h"
#include "dialectid/vsm/sparse.h"
#include "dialectid/vsm/vocabulary.h"

namespace dialectid {

// The d x N corpus matrix, stored by column. Column j is the vector of
// utterance j under one vocabulary and scaling; column order is dataset order.
struct VsmMatrix {
  uint32_t dim = 0;                   // d, rows (tokens)
  std::vector<std::string> ids;       // column -> utterance id
  std::vector<SparseVector> columns;  // N columns

  size_t num_columns() const { return columns.size(); }
};

// Raw-count matrix under the vocabulary's token spec.
VsmMatrix build_count_matrix(const Dataset &d, const Vocabulary &v);

// idf_i = ln(N / df_i); df_i = number of columns where token i is nonzero;
// tokens absent everywhere get idf 0.
ScalingSpec fit_idf(const VsmMatrix &raw_counts);

// Scaled matrix: column j = apply_scaling(count_vector(tokens_j)).
VsmMatrix build_matrix(const Dataset &d, const Vocabulary &v,
                       const ScalingSpec &s);

}  // namespace dialectid

#endif  // DIALECTID_VSM_MATRIX_H_
