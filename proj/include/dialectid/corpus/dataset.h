// corpus/dataset.h

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

#ifndef DIALECTID_CORPUS_DATASET_H_
#define DIALECTID_CORPUS_DATASET_H_

#include <string>
#include <vector>

#include <Eigen/Core>

namespace dialectid {

// One labeled (or, for prediction input, unlabeled) speech sample. Labels are
// uppercased at ingest and compared case-sensitively afterwards; the canonical
// set is EGY, GLF, LAV, NOR, MSA, ENG but any nonempty code is accepted.
struct Utterance {
  std::string id;
  std::string label;  // empty means unlabeled
  std::vector<std::string> words;
  std::vector<std::string> phones;
  Eigen::MatrixXd frames;  // 0x0 when absent

  bool has_label() const { return !label.empty(); }
  bool has_frames() const { return frames.rows() > 0; }
};

// Immutable after construction; safe to share read-only across workers.
struct Dataset {
  std::vector<Utterance> utterances;
  std::vector<std::string> label_set;  // sorted, unique, labels present

  size_t size() const { return utterances.size(); }
};

// Loads a JSON Lines manifest. Each line is an object with fields:
//   id      string, required, unique
//   label   string, optional
//   words   array of strings, optional
//   phones  array of strings, optional (must not contain '_')
//   frames  string path or 2-D numeric array, optional
// At least one of words/phones/frames must be nonempty. Relative frame paths
// resolve against frame_dir when given, else against the manifest's directory.
// Validation errors name the offending line.
Dataset load_dataset(const std::string &path, const std::string &frame_dir = "");

// Writes the manifest form back out, frames inline. load(save(d)) == d.
void save_dataset(const Dataset &d, const std::string &path);

struct DatasetStatsRow {
  std::string label;  // "TOTAL" for the summary row
  size_t utterances = 0;
  size_t word_tokens = 0;
  size_t phone_tokens = 0;
};

// One row per label present (sorted), then a TOTAL row. Unlabeled utterances
// count toward the total only.
std::vector<DatasetStatsRow> dataset_stats(const Dataset &d);

// Training entry points call this; prediction-mode datasets may stay unlabeled.
void require_all_labeled(const Dataset &d, const std::string &context);

}  // namespace dialectid

#endif  // DIALECTID_CORPUS_DATASET_H_
