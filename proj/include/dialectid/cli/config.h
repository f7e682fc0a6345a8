// cli/config.h

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

#ifndef DIALECTID_CLI_CONFIG_H_
#define DIALECTID_CLI_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dialectid/core/error.h"

namespace dialectid {

struct FeatureConfig {
  std::string field = "words";    // words | senones
  int senone_max_n = 4;
  std::string scaling = "tfidf";  // identity | tfidf
  int svd_k = 0;                  // 0 = no projection
  int min_count = 1;
};

struct ClassifierConfig {
  std::string kind = "svm";    // perplexity|naive_bayes|maxent|svm|cosine
  std::string source = "vsm";  // vsm | ivector
  double discount = 0.75;      // perplexity
  double lambda = 1e-3;        // maxent
  int max_iters = 200;         // maxent
  double tol = 1e-6;           // maxent
  double c_reg = 1.0;          // svm
  int max_epochs = 200;        // svm
};

struct IvectorConfig {
  int ubm_components = 2048;
  int ubm_iters = 10;
  int tv_rank = 400;
  int tv_iters = 5;
  bool use_lda = true;
  int lda_dim = 0;  // 0 = C-1
  bool use_wccn = true;
  bool use_length_norm = true;
};

struct FusionConfig {
  std::string method = "zscore";  // zscore | minmax
  std::vector<double> weights;    // empty = equal split
};

struct ExperimentConfig {
  std::string train_manifest;
  std::string test_manifest;
  std::string frame_dir;
  FeatureConfig feature;
  ClassifierConfig classifier;
  IvectorConfig ivector;
  FusionConfig fusion;
  std::string out_dir = "out";
  uint64_t seed = 0;
  int threads = 1;
};

// Raised by config validation; `problems` lists every violation found, not
// just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string> &problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Parse + validate. The seed field is required in the file (stochastic steps
// refuse to guess); everything else has defaults.
ExperimentConfig load_config(const std::string &path);

// Canonical resolved form (sorted keys); stable across runs.
std::string config_to_json_string(const ExperimentConfig &c);

// FNV-1a over the canonical form.
uint64_t config_hash(const ExperimentConfig &c);

// Short deterministic system name for score files, e.g.
// "svm.words-tfidf-svd64" or "cosine.ivector".
std::string system_name(const ExperimentConfig &c);

}  // namespace dialectid

#endif  // DIALECTID_CLI_CONFIG_H_
