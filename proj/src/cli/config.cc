// cli/config.cc

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

#include "dialectid/cli/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dialectid {

using nlohmann::json;

namespace {

std::string join_problems(const std::vector<std::string> &problems) {
  std::ostringstream os;
  os << "invalid configuration (" << problems.size() << " problem"
     << (problems.size() == 1 ? "" : "s") << ")";
  for (const auto &p : problems) os << "\n  - " << p;
  return os.str();
}

// Flags unknown keys so typos do not silently fall back to defaults.
void check_keys(const json &j, const std::string &where,
                const std::set<std::string> &allowed,
                std::vector<std::string> *problems) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key()))
      problems->push_back(where + ": unknown key '" + it.key() + "'");
  }
}

template <typename T>
void take(const json &j, const char *key, const std::string &where, T *out,
          std::vector<std::string> *problems) {
  if (!j.contains(key)) return;
  try {
    *out = j.at(key).get<T>();
  } catch (const json::exception &) {
    problems->push_back(where + "." + key + ": wrong type");
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error(join_problems(problems)), problems_(std::move(problems)) {}

ExperimentConfig load_config(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error(Msg() << "cannot open config: " << path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception &e) {
    throw Error(Msg() << path << ": " << e.what());
  }
  if (!j.is_object()) throw Error(Msg() << path << ": not a JSON object");

  std::vector<std::string> problems;
  ExperimentConfig c;

  check_keys(j, "config",
             {"train_manifest", "test_manifest", "frame_dir", "feature",
              "classifier", "ivector", "fusion", "out_dir", "seed",
              "threads"},
             &problems);
  take(j, "train_manifest", "config", &c.train_manifest, &problems);
  take(j, "test_manifest", "config", &c.test_manifest, &problems);
  take(j, "frame_dir", "config", &c.frame_dir, &problems);
  take(j, "out_dir", "config", &c.out_dir, &problems);
  take(j, "threads", "config", &c.threads, &problems);
  if (j.contains("seed")) {
    take(j, "seed", "config", &c.seed, &problems);
  } else {
    problems.push_back(
        "config.seed: required (stochastic steps refuse to guess a seed)");
  }

  if (j.contains("feature") && j["feature"].is_object()) {
    const json &f = j["feature"];
    check_keys(f, "feature",
               {"field", "senone_max_n", "scaling", "svd_k", "min_count"},
               &problems);
    take(f, "field", "feature", &c.feature.field, &problems);
    take(f, "senone_max_n", "feature", &c.feature.senone_max_n, &problems);
    take(f, "scaling", "feature", &c.feature.scaling, &problems);
    take(f, "svd_k", "feature", &c.feature.svd_k, &problems);
    take(f, "min_count", "feature", &c.feature.min_count, &problems);
  } else if (j.contains("feature")) {
    problems.push_back("feature: not an object");
  }

  if (j.contains("classifier") && j["classifier"].is_object()) {
    const json &k = j["classifier"];
    check_keys(k, "classifier",
               {"kind", "source", "discount", "lambda", "max_iters", "tol",
                "c_reg", "max_epochs"},
               &problems);
    take(k, "kind", "classifier", &c.classifier.kind, &problems);
    take(k, "source", "classifier", &c.classifier.source, &problems);
    take(k, "discount", "classifier", &c.classifier.discount, &problems);
    take(k, "lambda", "classifier", &c.classifier.lambda, &problems);
    take(k, "max_iters", "classifier", &c.classifier.max_iters, &problems);
    take(k, "tol", "classifier", &c.classifier.tol, &problems);
    take(k, "c_reg", "classifier", &c.classifier.c_reg, &problems);
    take(k, "max_epochs", "classifier", &c.classifier.max_epochs, &problems);
  } else if (j.contains("classifier")) {
    problems.push_back("classifier: not an object");
  }

  if (j.contains("ivector") && j["ivector"].is_object()) {
    const json &v = j["ivector"];
    check_keys(v, "ivector",
               {"ubm_components", "ubm_iters", "tv_rank", "tv_iters",
                "use_lda", "lda_dim", "use_wccn", "use_length_norm"},
               &problems);
    take(v, "ubm_components", "ivector", &c.ivector.ubm_components, &problems);
    take(v, "ubm_iters", "ivector", &c.ivector.ubm_iters, &problems);
    take(v, "tv_rank", "ivector", &c.ivector.tv_rank, &problems);
    take(v, "tv_iters", "ivector", &c.ivector.tv_iters, &problems);
    take(v, "use_lda", "ivector", &c.ivector.use_lda, &problems);
    take(v, "lda_dim", "ivector", &c.ivector.lda_dim, &problems);
    take(v, "use_wccn", "ivector", &c.ivector.use_wccn, &problems);
    take(v, "use_length_norm", "ivector", &c.ivector.use_length_norm,
         &problems);
  } else if (j.contains("ivector")) {
    problems.push_back("ivector: not an object");
  }

  if (j.contains("fusion") && j["fusion"].is_object()) {
    const json &f = j["fusion"];
    check_keys(f, "fusion", {"method", "weights"}, &problems);
    take(f, "method", "fusion", &c.fusion.method, &problems);
    take(f, "weights", "fusion", &c.fusion.weights, &problems);
  } else if (j.contains("fusion")) {
    problems.push_back("fusion: not an object");
  }

  // Range and enum checks; every violation is reported.
  if (c.train_manifest.empty())
    problems.push_back("config.train_manifest: required");
  if (c.feature.field != "words" && c.feature.field != "senones")
    problems.push_back("feature.field: expected words|senones, got '" +
                       c.feature.field + "'");
  if (c.feature.senone_max_n < 1)
    problems.push_back("feature.senone_max_n: must be >= 1");
  if (c.feature.scaling != "identity" && c.feature.scaling != "tfidf")
    problems.push_back("feature.scaling: expected identity|tfidf, got '" +
                       c.feature.scaling + "'");
  if (c.feature.svd_k < 0) problems.push_back("feature.svd_k: must be >= 0");
  if (c.feature.min_count < 1)
    problems.push_back("feature.min_count: must be >= 1");
  {
    const std::string &k = c.classifier.kind;
    if (k != "perplexity" && k != "naive_bayes" && k != "maxent" &&
        k != "svm" && k != "cosine")
      problems.push_back(
          "classifier.kind: expected perplexity|naive_bayes|maxent|svm|cosine"
          ", got '" + k + "'");
  }
  if (c.classifier.source != "vsm" && c.classifier.source != "ivector")
    problems.push_back("classifier.source: expected vsm|ivector, got '" +
                       c.classifier.source + "'");
  if (!(c.classifier.discount > 0.0 && c.classifier.discount < 1.0))
    problems.push_back("classifier.discount: must be in (0,1)");
  if (c.classifier.lambda < 0.0)
    problems.push_back("classifier.lambda: must be >= 0");
  if (c.classifier.max_iters < 0)
    problems.push_back("classifier.max_iters: must be >= 0");
  if (c.classifier.tol <= 0.0) problems.push_back("classifier.tol: must be > 0");
  if (c.classifier.c_reg <= 0.0)
    problems.push_back("classifier.c_reg: must be > 0");
  if (c.classifier.max_epochs < 1)
    problems.push_back("classifier.max_epochs: must be >= 1");
  if (c.ivector.ubm_components < 1)
    problems.push_back("ivector.ubm_components: must be >= 1");
  if (c.ivector.ubm_iters < 1)
    problems.push_back("ivector.ubm_iters: must be >= 1");
  if (c.ivector.tv_rank < 1) problems.push_back("ivector.tv_rank: must be >= 1");
  if (c.ivector.tv_iters < 1)
    problems.push_back("ivector.tv_iters: must be >= 1");
  if (c.ivector.lda_dim < 0) problems.push_back("ivector.lda_dim: must be >= 0");
  if (c.fusion.method != "zscore" && c.fusion.method != "minmax")
    problems.push_back("fusion.method: expected zscore|minmax, got '" +
                       c.fusion.method + "'");
  if (!c.fusion.weights.empty()) {
    double total = 0.0;
    for (double w : c.fusion.weights) {
      if (w < 0.0) problems.push_back("fusion.weights: negative weight");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-9)
      problems.push_back("fusion.weights: must sum to 1");
  }
  if (c.out_dir.empty()) problems.push_back("config.out_dir: required");
  if (c.threads < 1) problems.push_back("config.threads: must be >= 1");

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

std::string config_to_json_string(const ExperimentConfig &c) {
  json j;
  j["train_manifest"] = c.train_manifest;
  j["test_manifest"] = c.test_manifest;
  j["frame_dir"] = c.frame_dir;
  j["feature"] = {{"field", c.feature.field},
                  {"senone_max_n", c.feature.senone_max_n},
                  {"scaling", c.feature.scaling},
                  {"svd_k", c.feature.svd_k},
                  {"min_count", c.feature.min_count}};
  j["classifier"] = {{"kind", c.classifier.kind},
                     {"source", c.classifier.source},
                     {"discount", c.classifier.discount},
                     {"lambda", c.classifier.lambda},
                     {"max_iters", c.classifier.max_iters},
                     {"tol", c.classifier.tol},
                     {"c_reg", c.classifier.c_reg},
                     {"max_epochs", c.classifier.max_epochs}};
  j["ivector"] = {{"ubm_components", c.ivector.ubm_components},
                  {"ubm_iters", c.ivector.ubm_iters},
                  {"tv_rank", c.ivector.tv_rank},
                  {"tv_iters", c.ivector.tv_iters},
                  {"use_lda", c.ivector.use_lda},
                  {"lda_dim", c.ivector.lda_dim},
                  {"use_wccn", c.ivector.use_wccn},
                  {"use_length_norm", c.ivector.use_length_norm}};
  j["fusion"] = {{"method", c.fusion.method}, {"weights", c.fusion.weights}};
  j["out_dir"] = c.out_dir;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  return j.dump(2);
}

uint64_t config_hash(const ExperimentConfig &c) {
  std::string s = config_to_json_string(c);
  uint64_t h = 1469598103934665603ULL;  // FNV-1a 64-bit
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string system_name(const ExperimentConfig &c) {
  std::ostringstream os;
  os << c.classifier.kind << ".";
  if (c.classifier.kind == "cosine" || c.classifier.source == "ivector") {
    os << "ivector";
  } else if (c.classifier.kind == "perplexity") {
    os << c.feature.field;
    if (c.feature.field == "senones") os << c.feature.senone_max_n;
  } else {
    os << c.feature.field;
    if (c.feature.field == "senones") os << c.feature.senone_max_n;
    os << "-" << c.feature.scaling;
    if (c.feature.svd_k > 0) os << "-svd" << c.feature.svd_k;
  }
  return os.str();
}

}  // namespace dialectid
