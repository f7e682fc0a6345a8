// classifiers/prediction.h

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

#ifndef DIALECTID_CLASSIFIERS_PREDICTION_H_
#define DIALECTID_CLASSIFIERS_PREDICTION_H_

#include <string>
#include <vector>

#include "dialectid/core/error.h"

namespace dialectid {

// Per-class scores for one utterance plus the decision. Every classifier
// produces this shape, so evaluation and fusion stay classifier-agnostic.
// Ties go to the lowest class index; classes are ordered by label string.
struct Prediction {
  std::string id;
  std::vector<double> scores;  // aligned with the model's class list
  int best = 0;
  std::string label;
};

inline int argmax_lowest_tie(const std::vector<double> &scores) {
  require(!scores.empty(), "argmax over empty score list");
  int best = 0;
  for (size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = static_cast<int>(i);
  return best;
}

inline Prediction make_prediction(const std::string &id,
                                  const std::vector<std::string> &classes,
                                  std::vector<double> scores) {
  require(classes.size() == scores.size(),
          "make_prediction: class/score length mismatch");
  Prediction p;
  p.id = id;
  p.best = argmax_lowest_tie(scores);
  p.scores = std::move(scores);
  p.label = classes[p.best];
  return p;
}

}  // namespace dialectid

#endif  // DIALECTID_CLASSIFIERS_PREDICTION_H_
