// tests/cli_test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "dialectid/cli/commands.h"
#include "dialectid/cli/config.h"
#include "dialectid/fusion/score_matrix.h"
#include "testing_support.h"

using namespace dialectid;
using testing::TempDir;

namespace {

void write_file(const std::string &path, const std::string &body) {
  std::ofstream os(path);
  os << body;
}

bool has_problem(const ConfigError &e, const std::string &needle) {
  for (const auto &p : e.problems())
    if (p.find(needle) != std::string::npos) return true;
  return false;
}

// Two dialects with disjoint function words; enough signal for any backend.
void write_manifests(const TempDir &dir, int per_class_train,
                     int per_class_test) {
  auto utt = [](const std::string &id, const std::string &label, int salt) {
    nlohmann::json j;
    j["id"] = id;
    j["label"] = label;
    std::vector<std::string> words;
    for (int i = 0; i < 8; ++i)
      words.push_back((label == "EGY" ? "masr" : "sham") +
                      std::to_string((salt + i) % 5));
    j["words"] = words;
    j["phones"] = std::vector<std::string>{"m", "a", "s", "r"};
    return j.dump();
  };
  std::ofstream tr(dir.file("train.jsonl"));
  for (int i = 0; i < per_class_train; ++i) {
    tr << utt("tr-e-" + std::to_string(i), "EGY", i) << "\n";
    tr << utt("tr-l-" + std::to_string(i), "LAV", i) << "\n";
  }
  std::ofstream te(dir.file("test.jsonl"));
  for (int i = 0; i < per_class_test; ++i) {
    te << utt("te-e-" + std::to_string(i), "EGY", i + 1) << "\n";
    te << utt("te-l-" + std::to_string(i), "LAV", i + 1) << "\n";
  }
}

std::string minimal_config(const TempDir &dir) {
  nlohmann::json j;
  j["train_manifest"] = dir.file("train.jsonl");
  j["test_manifest"] = dir.file("test.jsonl");
  j["seed"] = 7;
  j["out_dir"] = dir.file("out");
  return j.dump();
}

int run_binary(const std::string &bin, const std::string &args,
               const std::string &out_path, const std::string &err_path) {
  std::string cmd = bin + " " + args + " > " + out_path + " 2> " + err_path;
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config loading

TEST_CASE("load_config reports every problem in a single pass") {
  TempDir dir("cfg");
  nlohmann::json j;
  j["colour"] = "blue";                 // unknown top-level key
  j["feature"] = {{"field", "chars"},   // bad enum
                  {"svd", 100},         // unknown key (svd_k typo)
                  {"svd_k", -2}};       // bad range
  j["classifier"] = {{"kind", "forest"}, {"discount", 1.5}};
  j["threads"] = 0;
  j["out_dir"] = "";
  // train_manifest and seed both missing
  std::string path = dir.file("bad.json");
  write_file(path, j.dump());

  try {
    load_config(path);
    FAIL("expected ConfigError");
  } catch (const ConfigError &e) {
    CHECK(e.problems().size() >= 8);
    CHECK(has_problem(e, "unknown key 'colour'"));
    CHECK(has_problem(e, "unknown key 'svd'"));
    CHECK(has_problem(e, "feature.field: expected words|senones"));
    CHECK(has_problem(e, "feature.svd_k: must be >= 0"));
    CHECK(has_problem(e, "classifier.discount: must be in (0,1)"));
    CHECK(has_problem(e, "config.threads: must be >= 1"));
    CHECK(has_problem(e, "config.out_dir: required"));
    CHECK(has_problem(e, "config.train_manifest: required"));
    CHECK(has_problem(e,
                      "config.seed: required (stochastic steps refuse to "
                      "guess a seed)"));
    CHECK(has_problem(e, "classifier.kind: expected"));
    // The what() string carries the same list for plain logging.
    CHECK(std::string(e.what()).find("unknown key 'colour'") !=
          std::string::npos);
  }
}

TEST_CASE("a minimal config loads with documented defaults") {
  TempDir dir("cfg");
  write_manifests(dir, 2, 1);
  std::string path = dir.file("config.json");
  write_file(path, minimal_config(dir));
  ExperimentConfig c = load_config(path);
  CHECK(c.seed == 7);
  CHECK(c.threads == 1);
  CHECK(c.feature.field == "words");
  CHECK(c.feature.senone_max_n == 4);
  CHECK(c.feature.scaling == "tfidf");
  CHECK(c.feature.svd_k == 0);
  CHECK(c.feature.min_count == 1);
  CHECK(c.classifier.kind == "svm");
  CHECK(c.classifier.source == "vsm");
  CHECK(c.classifier.discount == 0.75);
  CHECK(c.ivector.ubm_components == 2048);
  CHECK(c.ivector.tv_rank == 400);
  CHECK(c.ivector.use_lda);
  CHECK(c.ivector.lda_dim == 0);
  CHECK(c.fusion.method == "zscore");
  CHECK(c.fusion.weights.empty());

  SUBCASE("nonexistent config path") {
    CHECK_THROWS_AS(load_config(dir.file("missing.json")), Error);
  }
  SUBCASE("config that is not JSON") {
    std::string bad = dir.file("garbage.json");
    write_file(bad, "{{{");
    CHECK_THROWS_AS(load_config(bad), Error);
  }
}

TEST_CASE("config_hash ignores key order and tracks content") {
  TempDir dir("cfg");
  write_manifests(dir, 2, 1);
  std::string a = dir.file("a.json"), b = dir.file("b.json"),
              c = dir.file("c.json");
  write_file(a, "{\"seed\": 7, \"train_manifest\": \"" +
                    dir.file("train.jsonl") + "\", \"out_dir\": \"o\"}");
  write_file(b, "{\"out_dir\": \"o\", \"train_manifest\": \"" +
                    dir.file("train.jsonl") + "\", \"seed\": 7}");
  write_file(c, "{\"out_dir\": \"o\", \"train_manifest\": \"" +
                    dir.file("train.jsonl") + "\", \"seed\": 8}");
  uint64_t ha = config_hash(load_config(a));
  uint64_t hb = config_hash(load_config(b));
  uint64_t hc = config_hash(load_config(c));
  CHECK(ha == hb);
  CHECK(ha != hc);
}

TEST_CASE("a config survives the round trip through its JSON dump") {
  TempDir dir("cfg");
  write_manifests(dir, 2, 1);
  nlohmann::json j = nlohmann::json::parse(minimal_config(dir));
  j["feature"] = {{"field", "senones"}, {"senone_max_n", 3}, {"svd_k", 5}};
  j["classifier"] = {{"kind", "maxent"}, {"lambda", 0.01}};
  j["fusion"] = {{"method", "minmax"}, {"weights", {0.25, 0.75}}};
  std::string path = dir.file("config.json");
  write_file(path, j.dump());

  ExperimentConfig c = load_config(path);
  std::string dumped = dir.file("dumped.json");
  write_file(dumped, config_to_json_string(c));
  ExperimentConfig back = load_config(dumped);
  CHECK(config_hash(back) == config_hash(c));
  CHECK(back.feature.field == "senones");
  CHECK(back.feature.senone_max_n == 3);
  CHECK(back.classifier.kind == "maxent");
  CHECK(back.fusion.weights == std::vector<double>{0.25, 0.75});
}

TEST_CASE("system_name spells out the feature pipeline") {
  ExperimentConfig c;
  c.classifier.kind = "svm";
  c.feature.field = "words";
  c.feature.scaling = "tfidf";
  c.feature.svd_k = 0;
  CHECK(system_name(c) == "svm.words-tfidf");
  c.feature.svd_k = 200;
  CHECK(system_name(c) == "svm.words-tfidf-svd200");
  c.feature.field = "senones";
  c.feature.senone_max_n = 4;
  CHECK(system_name(c) == "svm.senones4-tfidf-svd200");
  c.feature.scaling = "identity";
  c.feature.svd_k = 0;
  CHECK(system_name(c) == "svm.senones4-identity");
  c.classifier.kind = "perplexity";
  c.feature.field = "words";
  CHECK(system_name(c) == "perplexity.words");
  c.classifier.kind = "cosine";
  CHECK(system_name(c) == "cosine.ivector");
  c.classifier.kind = "maxent";
  c.classifier.source = "ivector";
  CHECK(system_name(c) == "maxent.ivector");
}

// ---------------------------------------------------------------------------
// In-process commands

TEST_CASE("cmd_stats writes a run manifest next to its table") {
  TempDir dir("cli");
  write_manifests(dir, 3, 1);
  std::string cfg = dir.file("config.json");
  write_file(cfg, minimal_config(dir));
  GlobalArgs g;
  g.config_path = cfg;
  CHECK(cmd_stats({dir.file("train.jsonl")}, g) == 0);

  std::string manifest =
      testing::read_file_bytes(dir.file("out/run_stats.json"));
  nlohmann::json j = nlohmann::json::parse(manifest);
  CHECK(j["command"] == "stats");
  CHECK(j["seed"] == 7);
  std::string hash = j["config_hash"];
  CHECK(hash.size() == 16);
  CHECK(hash.find_first_not_of("0123456789abcdef") == std::string::npos);
}

TEST_CASE("cmd_evaluate reports accuracy 1.0 for perfect scores") {
  TempDir dir("cli");
  write_manifests(dir, 2, 3);

  ScoreMatrix m;
  m.system = "stub";
  m.classes = {"EGY", "LAV"};
  std::vector<std::string> gold;
  for (int i = 0; i < 3; ++i) {
    m.ids.push_back("te-e-" + std::to_string(i));
    gold.push_back("EGY");
    m.ids.push_back("te-l-" + std::to_string(i));
    gold.push_back("LAV");
  }
  m.scores = Eigen::MatrixXd::Zero(6, 2);
  for (int i = 0; i < 6; ++i) m.scores(i, gold[i] == "EGY" ? 0 : 1) = 1.0;
  std::string spath = dir.file("scores.json");
  save_score_matrix(m, spath);

  GlobalArgs g;
  g.out_dir = dir.file("out");
  std::string report = dir.file("report.json");
  CHECK(cmd_evaluate(spath, dir.file("test.jsonl"), report, g) == 0);

  nlohmann::json r = nlohmann::json::parse(testing::read_file_bytes(report));
  CHECK(r["accuracy"] == doctest::Approx(1.0));
  CHECK(nlohmann::json::parse(
            testing::read_file_bytes(dir.file("out/run_evaluate.json")))
            .contains("artifacts"));

  SUBCASE("an id missing from the manifest fails the command") {
    m.ids[0] = "nobody";
    save_score_matrix(m, spath);
    CHECK_THROWS_AS(cmd_evaluate(spath, dir.file("test.jsonl"), report, g),
                    Error);
  }
}

TEST_CASE("cmd_fuse combines systems and rejects mismatched headers") {
  TempDir dir("cli");
  ScoreMatrix a, b;
  a.system = "a";
  b.system = "b";
  a.classes = b.classes = {"EGY", "LAV"};
  a.ids = b.ids = {"u0", "u1"};
  a.scores = Eigen::MatrixXd::Zero(2, 2);
  b.scores = Eigen::MatrixXd::Zero(2, 2);
  a.scores << 2.0, 1.0, 0.0, 3.0;
  b.scores << 1.0, 0.0, 2.0, 0.5;
  save_score_matrix(a, dir.file("a.json"));
  save_score_matrix(b, dir.file("b.json"));

  GlobalArgs g;
  g.scores_out = dir.file("fused.json");
  CHECK(cmd_fuse({dir.file("a.json"), dir.file("b.json")}, {}, "zscore", g) ==
        0);
  ScoreMatrix fused = load_score_matrix(dir.file("fused.json"));
  CHECK(fused.ids == a.ids);
  CHECK(fused.classes == a.classes);

  SUBCASE("mismatched ids") {
    b.ids = {"u0", "other"};
    save_score_matrix(b, dir.file("b.json"));
    CHECK_THROWS_AS(
        cmd_fuse({dir.file("a.json"), dir.file("b.json")}, {}, "zscore", g),
        Error);
  }
  SUBCASE("unknown method") {
    CHECK_THROWS_AS(
        cmd_fuse({dir.file("a.json"), dir.file("b.json")}, {}, "softmax", g),
        Error);
  }
  SUBCASE("no inputs") {
    CHECK_THROWS_AS(cmd_fuse({}, {}, "zscore", g), Error);
  }
}

// ---------------------------------------------------------------------------
// The installed binary (exit codes and machine-readable failures)

TEST_CASE("binary: exit codes and stderr diagnostics") {
#ifdef DIALECTID_BIN_PATH
  const std::string bin = DIALECTID_BIN_PATH;
#else
  const char *env = std::getenv("DIALECTID_BIN");
  if (!env) {
    MESSAGE("no dialectid binary configured; skipping");
    return;
  }
  const std::string bin = env;
#endif
  TempDir dir("bin");
  write_manifests(dir, 2, 2);

  SUBCASE("evaluate with perfect scores exits 0 and prints accuracy") {
    ScoreMatrix m;
    m.system = "stub";
    m.classes = {"EGY", "LAV"};
    for (int i = 0; i < 2; ++i) {
      m.ids.push_back("te-e-" + std::to_string(i));
      m.ids.push_back("te-l-" + std::to_string(i));
    }
    m.scores = Eigen::MatrixXd::Zero(4, 2);
    for (int i = 0; i < 4; ++i) m.scores(i, i % 2) = 1.0;
    save_score_matrix(m, dir.file("scores.json"));

    int rc = run_binary(bin,
                        "evaluate --scores " + dir.file("scores.json") +
                            " --manifest " + dir.file("test.jsonl"),
                        dir.file("out.txt"), dir.file("err.txt"));
    CHECK(rc == 0);
    std::string out = testing::read_file_bytes(dir.file("out.txt"));
    CHECK(out.find("accuracy 1.0000") != std::string::npos);
  }

  SUBCASE("fuse with mismatched headers exits nonzero with a JSON error") {
    ScoreMatrix a, b;
    a.system = "a";
    b.system = "b";
    a.classes = {"EGY", "LAV"};
    b.classes = {"EGY", "NOR"};
    a.ids = b.ids = {"u0"};
    a.scores = Eigen::MatrixXd::Zero(1, 2);
    b.scores = Eigen::MatrixXd::Zero(1, 2);
    save_score_matrix(a, dir.file("a.json"));
    save_score_matrix(b, dir.file("b.json"));
    int rc = run_binary(bin,
                        "fuse --scores " + dir.file("a.json") + " --scores " +
                            dir.file("b.json") + " --scores-out " +
                            dir.file("fused.json"),
                        dir.file("out.txt"), dir.file("err.txt"));
    CHECK(rc != 0);
    std::string err = testing::read_file_bytes(dir.file("err.txt"));
    CHECK(err.find("\"error\"") != std::string::npos);
  }

  SUBCASE("a broken config exits 1 and enumerates problems on stderr") {
    write_file(dir.file("bad.json"), "{\"colour\": 1, \"out_dir\": \"o\"}");
    int rc = run_binary(
        bin, "build-vsm --config " + dir.file("bad.json"),
        dir.file("out.txt"), dir.file("err.txt"));
    CHECK(rc == 1);
    std::string err = testing::read_file_bytes(dir.file("err.txt"));
    CHECK(err.find("problems") != std::string::npos);
    CHECK(err.find("colour") != std::string::npos);
  }

  SUBCASE("no subcommand is a usage error") {
    int rc = run_binary(bin, "", dir.file("out.txt"), dir.file("err.txt"));
    CHECK(rc != 0);
  }
}
