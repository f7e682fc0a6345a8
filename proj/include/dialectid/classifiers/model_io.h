// classifiers/model_io.h

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

#ifndef DIALECTID_CLASSIFIERS_MODEL_IO_H_
#define DIALECTID_CLASSIFIERS_MODEL_IO_H_

#include <optional>
#include <string>
#include <vector>

#include "dialectid/classifiers/linear_svm.h"
#include "dialectid/classifiers/maxent.h"
#include "dialectid/classifiers/naive_bayes.h"
#include "dialectid/classifiers/prediction.h"
#include "dialectid/classifiers/trigram_lm.h"
#include "dialectid/corpus/dataset.h"
#include "dialectid/vsm/bundle.h"

namespace dialectid {

enum class ClassifierKind { kPerplexity, kNaiveBayes, kMaxEnt, kLinearSvm };

// What the classifier consumes at prediction time.  kTokens: a token stream
// (perplexity models).  kVsm: an utterance run through the embedded feature
// bundle.  kIvector: an externally supplied dense vector.
enum class FeatureSource { kTokens, kVsm, kIvector };

std::string classifier_kind_name(ClassifierKind k);
ClassifierKind classifier_kind_from_name(const std::string &s);

// A trained classifier together with everything needed to score a raw
// utterance (or a precomputed i-vector).  Saved as a "CLF1" container.
struct ClassifierModel {
  ClassifierKind kind = ClassifierKind::kPerplexity;
  FeatureSource source = FeatureSource::kTokens;

  // kTokens path.
  TokenSpec token_spec;
  double discount = 0.75;
  std::optional<TrigramLmSet> lms;

  // kVsm path.
  std::optional<VsmBundle> vsm;

  std::optional<NaiveBayesModel> nb;
  std::optional<MaxEntModel> maxent;
  std::optional<LinearSvmModel> svm;

  const std::vector<std::string> &classes() const;
  uint32_t input_dim() const;  // vector input dimension (kVsm / kIvector)
};

void save_classifier(const ClassifierModel &m, const std::string &path);
ClassifierModel load_classifier(const std::string &path);

// Parameter dump for inspection (priors / weights / vocabulary sizes).
void export_classifier_json(const ClassifierModel &m, const std::string &path);

// Score one utterance through the embedded feature pipeline (kTokens/kVsm).
Prediction classify_utterance(const ClassifierModel &m, const Utterance &u);

// Score a precomputed dense vector (kIvector, or kVsm past the pipeline).
Prediction classify_vector(const ClassifierModel &m, const Eigen::VectorXd &v,
                           const std::string &id);

}  // namespace dialectid

#endif  // DIALECTID_CLASSIFIERS_MODEL_IO_H_
