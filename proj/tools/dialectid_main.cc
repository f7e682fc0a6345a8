// tools/dialectid_main.cc

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

// dialect identification pipeline driver.  Typical run order:
//   dialectid build-vsm --config exp.json
//   dialectid train --config exp.json
//   dialectid predict --config exp.json
//   dialectid evaluate --scores out/scores_X.json --manifest test.jsonl
// plus train-ubm / train-tv / extract-ivectors / fit-backend for the
// acoustic chain and fuse for system combination.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dialectid/cli/commands.h"
#include "dialectid/core/error.h"

int main(int argc, char **argv) {
  using dialectid::GlobalArgs;

  CLI::App app{"spoken dialect identification: utterance vector-space and "
               "i-vector models, four classifiers, score fusion"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalArgs g;
  uint64_t seed = 0;
  int threads = 0;
  CLI::Option *seed_opt =
      app.add_option("--seed", seed, "override config.seed");
  CLI::Option *threads_opt =
      app.add_option("--threads", threads, "override config.threads");
  app.add_option("--config", g.config_path, "experiment config (JSON)");
  app.add_option("--out-dir", g.out_dir, "override config.out_dir");
  app.add_option("--scores-out", g.scores_out,
                 "score matrix output path (predict, fuse)");

  std::vector<std::string> manifests;
  CLI::App *stats = app.add_subcommand("stats", "per-dialect corpus counts");
  stats->add_option("manifest", manifests, "dataset manifest(s)")->required();

  app.add_subcommand("build-vsm",
                     "fit vocabulary, scaling, and optional SVD projection");
  app.add_subcommand("train", "train the configured classifier");
  app.add_subcommand("train-ubm", "fit the diagonal-covariance GMM UBM");
  app.add_subcommand("train-tv", "fit the total-variability subspace");
  app.add_subcommand("extract-ivectors",
                     "extract i-vectors for the train/test manifests");
  app.add_subcommand("fit-backend",
                     "fit LDA/WCCN/length-norm and per-class cosine models");
  app.add_subcommand("predict", "score the test split with the trained model");

  std::string eval_scores, eval_manifest, eval_report;
  CLI::App *evaluate =
      app.add_subcommand("evaluate", "accuracy / precision / recall report");
  evaluate->add_option("--scores", eval_scores, "score matrix JSON")
      ->required();
  evaluate->add_option("--manifest", eval_manifest, "gold labels manifest")
      ->required();
  evaluate->add_option("--report", eval_report, "report JSON output path");

  std::vector<std::string> fuse_scores;
  std::vector<double> fuse_weights;
  std::string fuse_method;
  CLI::App *fuse =
      app.add_subcommand("fuse", "normalize and combine score matrices");
  fuse->add_option("--scores", fuse_scores, "score matrix JSON (repeatable)")
      ->required();
  fuse->add_option("--weights", fuse_weights,
                   "per-system weights (default: equal)");
  fuse->add_option("--method", fuse_method, "zscore | minmax");

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) g.seed = seed;
  if (threads_opt->count() > 0) g.threads = threads;

  try {
    if (app.got_subcommand("stats")) return dialectid::cmd_stats(manifests, g);
    if (app.got_subcommand("build-vsm")) return dialectid::cmd_build_vsm(g);
    if (app.got_subcommand("train")) return dialectid::cmd_train(g);
    if (app.got_subcommand("train-ubm")) return dialectid::cmd_train_ubm(g);
    if (app.got_subcommand("train-tv")) return dialectid::cmd_train_tv(g);
    if (app.got_subcommand("extract-ivectors"))
      return dialectid::cmd_extract_ivectors(g);
    if (app.got_subcommand("fit-backend")) return dialectid::cmd_fit_backend(g);
    if (app.got_subcommand("predict")) return dialectid::cmd_predict(g);
    if (app.got_subcommand("evaluate"))
      return dialectid::cmd_evaluate(eval_scores, eval_manifest, eval_report,
                                     g);
    if (app.got_subcommand("fuse"))
      return dialectid::cmd_fuse(fuse_scores, fuse_weights, fuse_method, g);
  } catch (const dialectid::ConfigError &e) {
    nlohmann::json j;
    j["error"] = e.what();
    j["problems"] = e.problems();
    std::cerr << j.dump(2) << "\n";
    return 1;
  } catch (const std::exception &e) {
    nlohmann::json j;
    j["error"] = e.what();
    std::cerr << j.dump(2) << "\n";
    return 1;
  }
  return 1;  // unreachable: require_subcommand(1)
}
