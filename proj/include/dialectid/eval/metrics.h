// eval/metrics.h

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

#ifndef DIALECTID_EVAL_METRICS_H_
#define DIALECTID_EVAL_METRICS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dialectid/classifiers/prediction.h"
#include "dialectid/corpus/dataset.h"

namespace dialectid {

// Rows = gold label, columns = predicted label.
struct ConfusionMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<int64_t>> counts;

  int64_t total() const;
  int64_t trace() const;
};

struct ClassMetrics {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  // False when the denominator was zero and the value is 0 by convention.
  bool precision_defined = true;
  bool recall_defined = true;
};

struct Metrics {
  double accuracy = 0.0;
  double macro_precision = 0.0;  // unweighted class mean
  double macro_recall = 0.0;
  std::vector<ClassMetrics> per_class;
};

struct EvalReport {
  Metrics metrics;
  ConfusionMatrix confusion;
};

// Metrics from a confusion matrix alone.
EvalReport report_from_confusion(const ConfusionMatrix &cm);

// Every prediction id must be a labeled utterance in gold, and every
// predicted label must be in the gold label set.
EvalReport evaluate(const std::vector<Prediction> &predictions,
                    const Dataset &gold);

std::string format_report(const EvalReport &r);
void write_report_json(const EvalReport &r, const std::string &path);

}  // namespace dialectid

#endif  // DIALECTID_EVAL_METRICS_H_
