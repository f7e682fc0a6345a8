// fusion/score_matrix.h

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

#ifndef DIALECTID_FUSION_SCORE_MATRIX_H_
#define DIALECTID_FUSION_SCORE_MATRIX_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dialectid/classifiers/prediction.h"

namespace dialectid {

// Per-system scores: one row per utterance, one column per class.
struct ScoreMatrix {
  std::string system;
  std::vector<std::string> ids;      // N
  std::vector<std::string> classes;  // C
  Eigen::MatrixXd scores;            // N x C

  void check() const;
};

ScoreMatrix scores_from_predictions(const std::string &system,
                                    const std::vector<std::string> &classes,
                                    const std::vector<Prediction> &preds);

// Row-wise argmax with the lowest-index tie rule.
std::vector<Prediction> predictions_from_scores(const ScoreMatrix &m);

// JSON file: {system, ids, classes, scores (row-major)}.
void save_score_matrix(const ScoreMatrix &m, const std::string &path);
ScoreMatrix load_score_matrix(const std::string &path);

}  // namespace dialectid

#endif  // DIALECTID_FUSION_SCORE_MATRIX_H_
