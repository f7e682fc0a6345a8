// vsm/bundle.h

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

#ifndef DIALECTID_VSM_BUNDLE_H_
#define DIALECTID_VSM_BUNDLE_H_

#include <optional>
#include <string>

#include "dialectid/core/serialize.h"
#include "dialectid/corpus/dataset.h"
#include "dialectid/vsm/scaling.h"
#include "dialectid/vsm/svd.h"
#include "dialectid/vsm/vocabulary.h"

namespace dialectid {

// The fitted utterance-to-feature pipeline: vocabulary, scaling, and an
// optional SVD projection. This is the "VSM1" artifact the CLI produces and
// downstream classifiers embed.
struct VsmBundle {
  Vocabulary vocab;
  ScalingSpec scaling;
  std::optional<SvdProjection> svd;

  // Raw counts of the utterance's tokens under the vocabulary.
  SparseVector counts(const Utterance &u) const {
    return count_vector(extract_tokens(u, vocab.spec()), vocab);
  }

  // Binary presence vector over raw counts (Naive Bayes input).
  SparseVector presence(const Utterance &u) const;

  SparseVector scaled(const Utterance &u) const {
    return apply_scaling(counts(u), scaling);
  }

  // Dense feature vector: scaled counts, SVD-projected when fitted.
  Eigen::VectorXd features(const Utterance &u) const;

  int feature_dim() const {
    return svd ? svd->k() : static_cast<int>(vocab.size());
  }
};

// Versioned "VSM1" binary container. Vocabulary and projection are also
// writable standalone (kind tags vocab/projection/bundle).
void save_vsm_bundle(const VsmBundle &b, const std::string &path);
VsmBundle load_vsm_bundle(const std::string &path);

// Body-only stream form, for embedding a bundle in other containers.
void write_vsm_bundle(BinaryWriter *w, const VsmBundle &b);
VsmBundle read_vsm_bundle(BinaryReader *r);

// Human-inspectable JSON form of the same content.
void export_vsm_bundle_json(const VsmBundle &b, const std::string &path);

}  // namespace dialectid

#endif  // DIALECTID_VSM_BUNDLE_H_
