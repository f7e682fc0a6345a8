// vsm/sparse.h

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

#ifndef DIALECTID_VSM_SPARSE_H_
#define DIALECTID_VSM_SPARSE_H_

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "dialectid/core/error.h"

namespace dialectid {

// Sparse utterance vector: (index, value) pairs with strictly increasing
// indices, no explicit zeros, all indices < dim.
struct SparseVector {
  std::vector<std::pair<uint32_t, double>> entries;
  uint32_t dim = 0;

  size_t nnz() const { return entries.size(); }

  double dot(const SparseVector &other) const {
    double s = 0.0;
    size_t i = 0, j = 0;
    while (i < entries.size() && j < other.entries.size()) {
      if (entries[i].first < other.entries[j].first) {
        ++i;
      } else if (entries[i].first > other.entries[j].first) {
        ++j;
      } else {
        s += entries[i].second * other.entries[j].second;
        ++i;
        ++j;
      }
    }
    return s;
  }

  double squared_norm() const {
    double s = 0.0;
    for (const auto &e : entries) s += e.second * e.second;
    return s;
  }

  Eigen::VectorXd to_dense() const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    for (const auto &e : entries) v(e.first) = e.second;
    return v;
  }

  // out += alpha * this
  void add_to(double alpha, Eigen::VectorXd *out) const {
    for (const auto &e : entries) (*out)(e.first) += alpha * e.second;
  }

  void check() const {
    uint32_t prev = 0;
    bool first = true;
    for (const auto &e : entries) {
      require(e.first < dim, "SparseVector: index out of range");
      require(first || e.first > prev, "SparseVector: indices not increasing");
      require(e.second != 0.0, "SparseVector: stored zero entry");
      prev = e.first;
      first = false;
    }
  }

  static SparseVector from_dense(const Eigen::VectorXd &v) {
    SparseVector s;
    s.dim = static_cast<uint32_t>(v.size());
    for (uint32_t i = 0; i < s.dim; ++i)
      if (v(i) != 0.0) s.entries.emplace_back(i, v(i));
    return s;
  }
};

}  // namespace dialectid

#endif  // DIALECTID_VSM_SPARSE_H_
