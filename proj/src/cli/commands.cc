// cli/commands.cc

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

#include "dialectid/cli/commands.h"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dialectid/classifiers/model_io.h"
#include "dialectid/core/error.h"
#include "dialectid/core/parallel.h"
#include "dialectid/corpus/dataset.h"
#include "dialectid/eval/metrics.h"
#include "dialectid/fusion/fuse.h"
#include "dialectid/fusion/score_matrix.h"
#include "dialectid/ivector/backend.h"
#include "dialectid/ivector/gmm.h"
#include "dialectid/ivector/tv.h"
#include "dialectid/vsm/bundle.h"

namespace dialectid {

namespace {

namespace fs = std::filesystem;

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

// Per-run bookkeeping: resolved config, output paths, and the run manifest
// (run_<command>.json) recording what was produced from which exact config.
struct RunContext {
  std::string command;
  ExperimentConfig config;
  bool has_config = false;
  std::string out_dir;  // may be empty: no manifest, path() errors
  std::vector<std::string> artifacts;
  std::map<std::string, double> timings_ms;
  Stopwatch total;

  std::string path(const std::string &name) const {
    require(!out_dir.empty(),
            Msg() << command
                  << ": no output directory (pass --out-dir or --config)");
    return (fs::path(out_dir) / name).string();
  }

  void note(const std::string &p) { artifacts.push_back(p); }

  void finish() {
    if (out_dir.empty()) return;
    timings_ms["total"] = total.ms();
    nlohmann::json j;
    j["command"] = command;
    if (has_config) {
      j["config"] = nlohmann::json::parse(config_to_json_string(config));
      std::ostringstream h;
      h << std::hex << std::setw(16) << std::setfill('0')
        << config_hash(config);
      j["config_hash"] = h.str();
      j["seed"] = config.seed;
      j["threads"] = config.threads;
    }
    j["artifacts"] = artifacts;
    j["timings_ms"] = timings_ms;
    std::string p = (fs::path(out_dir) / ("run_" + command + ".json")).string();
    std::ofstream os(p);
    require(os.good(), Msg() << "cannot write " << p);
    os << j.dump(2) << "\n";
  }
};

RunContext make_context(const std::string &command, const GlobalArgs &g,
                        bool need_config) {
  RunContext ctx;
  ctx.command = command;
  if (!g.config_path.empty()) {
    ctx.config = load_config(g.config_path);
    ctx.has_config = true;
  } else {
    require(!need_config, Msg() << command << ": --config is required");
  }
  if (g.seed) ctx.config.seed = *g.seed;
  if (g.threads) {
    require(*g.threads >= 1, "--threads: must be >= 1");
    ctx.config.threads = *g.threads;
  }
  if (!g.out_dir.empty()) ctx.config.out_dir = g.out_dir;
  if (ctx.has_config || !g.out_dir.empty()) ctx.out_dir = ctx.config.out_dir;
  if (!ctx.out_dir.empty()) fs::create_directories(ctx.out_dir);
  return ctx;
}

void ensure_parent_dir(const std::string &file_path) {
  fs::path parent = fs::path(file_path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

Dataset load_train_split(const ExperimentConfig &c) {
  require(!c.train_manifest.empty(),
          "config.train_manifest: required for this command");
  return load_dataset(c.train_manifest, c.frame_dir);
}

Dataset load_test_split(const ExperimentConfig &c) {
  require(!c.test_manifest.empty(),
          "config.test_manifest: required for this command");
  return load_dataset(c.test_manifest, c.frame_dir);
}

TokenSpec token_spec_from(const FeatureConfig &f) {
  return TokenSpec{token_field_from_name(f.field), f.senone_max_n};
}

// Per-utterance Baum-Welch statistics for every utterance that has frames.
// Utterances without frames are an error: silent zero statistics would give
// meaningless (prior-mean) i-vectors.
std::vector<BaumWelchStats> dataset_stats_against_ubm(const GmmUbm &ubm,
                                                      const Dataset &d,
                                                      int threads) {
  std::vector<BaumWelchStats> stats(d.utterances.size());
  parallel_for(static_cast<int>(d.utterances.size()), threads, [&](int i) {
    const Utterance &u = d.utterances[i];
    require(u.has_frames(),
            Msg() << "utterance '" << u.id
                  << "': no frames; acoustic modeling needs frame features");
    stats[i] = accumulate_stats(ubm, u.frames);
  });
  return stats;
}

void print_stats_table(const Dataset &d) {
  std::vector<DatasetStatsRow> rows = dataset_stats(d);
  std::cout << std::left << std::setw(16) << "label" << std::right
            << std::setw(12) << "utterances" << std::setw(14) << "word_tokens"
            << std::setw(14) << "phone_tokens" << "\n";
  for (const DatasetStatsRow &r : rows) {
    std::cout << std::left << std::setw(16) << r.label << std::right
              << std::setw(12) << r.utterances << std::setw(14)
              << r.word_tokens << std::setw(14) << r.phone_tokens << "\n";
  }
}

// kind=perplexity: one trigram model per dialect over the configured token
// stream.
ClassifierModel train_perplexity_model(const ExperimentConfig &c,
                                       const Dataset &train) {
  TokenSpec spec = token_spec_from(c.feature);
  std::map<std::string, std::vector<std::vector<std::string>>> per_class;
  for (const Utterance &u : train.utterances)
    per_class[u.label].push_back(extract_tokens(u, spec));

  ClassifierModel m;
  m.kind = ClassifierKind::kPerplexity;
  m.source = FeatureSource::kTokens;
  m.token_spec = spec;
  m.discount = c.classifier.discount;
  TrigramLmSet set;
  for (const auto &kv : per_class) {
    set.classes.push_back(kv.first);
    try {
      set.models.push_back(TrigramLm::train(kv.second, c.classifier.discount));
    } catch (const Error &e) {
      throw Error(Msg() << "class '" << kv.first << "': " << e.what());
    }
  }
  m.lms = std::move(set);
  return m;
}

// kind=naive_bayes/maxent/svm over VSM features or precomputed i-vectors.
ClassifierModel train_vector_model(const RunContext &ctx) {
  const ExperimentConfig &c = ctx.config;
  const std::string &kind = c.classifier.kind;

  std::vector<SparseVector> feats;
  std::vector<std::string> labels;
  ClassifierModel m;
  m.kind = classifier_kind_from_name(kind);

  if (c.classifier.source == "vsm") {
    Dataset train = load_train_split(c);
    require_all_labeled(train, "train manifest");
    VsmBundle bundle = load_vsm_bundle(ctx.path("vsm.bin"));
    int n = static_cast<int>(train.utterances.size());
    feats.resize(n);
    labels.resize(n);
    bool presence = kind == "naive_bayes";
    parallel_for(n, c.threads, [&](int i) {
      const Utterance &u = train.utterances[i];
      if (presence)
        feats[i] = bundle.presence(u);
      else if (bundle.svd)
        feats[i] = SparseVector::from_dense(bundle.features(u));
      else
        feats[i] = bundle.scaled(u);
      labels[i] = u.label;
    });
    m.source = FeatureSource::kVsm;
    m.token_spec = bundle.vocab.spec();
    m.vsm = std::move(bundle);
  } else {  // ivector
    require(kind == "maxent" || kind == "svm",
            Msg() << "classifier.source 'ivector' supports maxent/svm, not '"
                  << kind << "' (naive_bayes needs binary presence features)");
    std::vector<IVector> ivs = load_ivectors(ctx.path("ivectors_train.jsonl"));
    for (const IVector &iv : ivs) {
      require(!iv.label.empty(),
              Msg() << "i-vector '" << iv.id << "': unlabeled, cannot train");
      feats.push_back(SparseVector::from_dense(iv.v));
      labels.push_back(iv.label);
    }
    m.source = FeatureSource::kIvector;
  }

  if (kind == "naive_bayes") {
    m.nb = train_naive_bayes(feats, labels);
  } else if (kind == "maxent") {
    MaxEntOptions opts;
    opts.lambda = c.classifier.lambda;
    opts.max_iters = c.classifier.max_iters;
    opts.tol = c.classifier.tol;
    MaxEntTrainInfo info;
    m.maxent = train_maxent(feats, labels, opts, &info);
    std::cout << "maxent: " << info.iterations << " iters, "
              << (info.converged ? "converged" : "hit iteration cap")
              << ", objective "
              << (info.objective.empty() ? 0.0 : info.objective.back()) << "\n";
  } else {
    SvmOptions opts;
    opts.c_reg = c.classifier.c_reg;
    opts.max_epochs = c.classifier.max_epochs;
    opts.seed = c.seed;
    SvmTrainInfo info;
    m.svm = train_svm(feats, labels, opts, &info);
    std::cout << "svm: " << info.objective.size() << " epochs, objective "
              << (info.objective.empty() ? 0.0 : info.objective.back()) << "\n";
  }
  return m;
}

}  // namespace

int cmd_stats(const std::vector<std::string> &manifests, const GlobalArgs &g) {
  RunContext ctx = make_context("stats", g, /*need_config=*/false);
  require(!manifests.empty(), "stats: at least one manifest path required");
  for (const std::string &path : manifests) {
    Dataset d = load_dataset(path, ctx.config.frame_dir);
    std::cout << "== " << path << " ==\n";
    print_stats_table(d);
  }
  ctx.finish();
  return 0;
}

int cmd_build_vsm(const GlobalArgs &g) {
  RunContext ctx = make_context("build-vsm", g, /*need_config=*/true);
  const ExperimentConfig &c = ctx.config;

  Stopwatch load;
  Dataset train = load_train_split(c);
  ctx.timings_ms["load"] = load.ms();

  Stopwatch fit;
  TokenSpec spec = token_spec_from(c.feature);
  VsmBundle bundle;
  bundle.vocab = build_vocabulary(train, spec, c.feature.min_count);
  require(bundle.vocab.size() > 0,
          Msg() << "empty vocabulary over field '" << c.feature.field
                << "' with min_count " << c.feature.min_count);
  if (scaling_kind_from_name(c.feature.scaling) == ScalingSpec::Kind::kTfidf) {
    bundle.scaling = fit_idf(build_count_matrix(train, bundle.vocab));
  } else {
    bundle.scaling = ScalingSpec::identity();
  }
  if (c.feature.svd_k > 0) {
    VsmMatrix mat = build_matrix(train, bundle.vocab, bundle.scaling);
    bundle.svd = fit_svd(mat, c.feature.svd_k, c.seed);
  }
  ctx.timings_ms["fit"] = fit.ms();

  std::string bin = ctx.path("vsm.bin");
  save_vsm_bundle(bundle, bin);
  ctx.note(bin);
  std::string json = ctx.path("vsm.json");
  export_vsm_bundle_json(bundle, json);
  ctx.note(json);
  std::cout << "vsm: " << bundle.vocab.size() << " " << c.feature.field
            << " types, scaling " << c.feature.scaling << ", feature dim "
            << bundle.feature_dim() << " -> " << bin << "\n";
  ctx.finish();
  return 0;
}

int cmd_train(const GlobalArgs &g) {
  RunContext ctx = make_context("train", g, /*need_config=*/true);
  const ExperimentConfig &c = ctx.config;
  require(c.classifier.kind != "cosine",
          "classifier.kind 'cosine' is fitted by fit-backend, not train");

  Stopwatch fit;
  ClassifierModel m;
  if (c.classifier.kind == "perplexity") {
    Dataset train = load_train_split(c);
    require_all_labeled(train, "train manifest");
    m = train_perplexity_model(c, train);
  } else {
    m = train_vector_model(ctx);
  }
  ctx.timings_ms["fit"] = fit.ms();

  std::string bin = ctx.path("classifier.bin");
  save_classifier(m, bin);
  ctx.note(bin);
  std::string json = ctx.path("classifier.json");
  export_classifier_json(m, json);
  ctx.note(json);
  std::cout << "classifier: " << c.classifier.kind << ", "
            << m.classes().size() << " classes -> " << bin << "\n";
  ctx.finish();
  return 0;
}

int cmd_train_ubm(const GlobalArgs &g) {
  RunContext ctx = make_context("train-ubm", g, /*need_config=*/true);
  const ExperimentConfig &c = ctx.config;

  Stopwatch load;
  Dataset train = load_train_split(c);
  std::vector<Eigen::MatrixXd> mats;
  for (const Utterance &u : train.utterances)
    if (u.has_frames() && u.frames.rows() > 0) mats.push_back(u.frames);
  require(!mats.empty(),
          Msg() << "no utterances with frames in " << c.train_manifest);
  ctx.timings_ms["load"] = load.ms();

  Stopwatch fit;
  UbmOptions opts;
  opts.components = c.ivector.ubm_components;
  opts.iters = c.ivector.ubm_iters;
  opts.seed = c.seed;
  UbmTrainInfo info;
  GmmUbm ubm = train_ubm(mats, opts, &info);
  ctx.timings_ms["fit"] = fit.ms();

  std::string bin = ctx.path("ubm.bin");
  save_ubm(ubm, bin);
  ctx.note(bin);
  std::cout << "ubm: " << ubm.num_components() << " components, dim "
            << ubm.dim() << ", per-frame ll " << info.log_likelihood.front()
            << " -> " << info.log_likelihood.back() << " -> " << bin << "\n";
  ctx.finish();
  return 0;
}

int cmd_train_tv(const GlobalArgs &g) {
  RunContext ctx = make_context("train-tv", g, /*need_config=*/true);
  const ExperimentConfig &c = ctx.config;

  GmmUbm ubm = load_ubm(ctx.path("ubm.bin"));
  Stopwatch accumulate;
  Dataset train = load_train_split(c);
  std::vector<BaumWelchStats> stats =
      dataset_stats_against_ubm(ubm, train, c.threads);
  ctx.timings_ms["accumulate"] = accumulate.ms();

  Stopwatch fit;
  TvOptions opts;
  opts.rank = c.ivector.tv_rank;
  opts.iters = c.ivector.tv_iters;
  opts.seed = c.seed;
  TvTrainInfo info;
  TvModel tv = train_tv(ubm, stats, opts, &info);
  ctx.timings_ms["fit"] = fit.ms();

  std::string bin = ctx.path("tv.bin");
  save_tv(tv, bin);
  ctx.note(bin);
  std::cout << "tv: rank " << tv.rank() << ", objective "
            << info.objective.front() << " -> " << info.objective.back()
            << " -> " << bin << "\n";
  ctx.finish();
  return 0;
}

int cmd_extract_ivectors(const GlobalArgs &g) {
  RunContext ctx = make_context("extract-ivectors", g, /*need_config=*/true);
  const ExperimentConfig &c = ctx.config;

  GmmUbm ubm = load_ubm(ctx.path("ubm.bin"));
  TvModel tv = load_tv(ctx.path("tv.bin"));

  struct Split {
    std::string manifest;
    std::string out_name;
  };
  std::vector<Split> splits = {{c.train_manifest, "ivectors_train.jsonl"}};
  if (!c.test_manifest.empty())
    splits.push_back({c.test_manifest, "ivectors_test.jsonl"});

  for (const Split &split : splits) {
    Stopwatch extract;
    Dataset d = load_dataset(split.manifest, c.frame_dir);
    int n = static_cast<int>(d.utterances.size());
    std::vector<IVector> ivs(n);
    parallel_for(n, c.threads, [&](int i) {
      const Utterance &u = d.utterances[i];
      require(u.has_frames(),
              Msg() << "utterance '" << u.id
                    << "': no frames; i-vector extraction needs frames");
      BaumWelchStats stats = accumulate_stats(ubm, u.frames);
      ivs[i] = IVector{u.id, u.label, extract_ivector(ubm, tv, stats)};
    });
    std::string out = ctx.path(split.out_name);
    save_ivectors(ivs, out);
    ctx.note(out);
    ctx.timings_ms[split.out_name] = extract.ms();
    std::cout << "ivectors: " << n << " x " << tv.rank() << " -> " << out
              << "\n";
  }
  ctx.finish();
  return 0;
}

int cmd_fit_backend(const GlobalArgs &g) {
  RunContext ctx = make_context("fit-backend", g, /*need_config=*/true);
  const ExperimentConfig &c = ctx.config;

  std::vector<IVector> ivs = load_ivectors(ctx.path("ivectors_train.jsonl"));
  Stopwatch fit;
  BackendOptions opts;
  opts.use_lda = c.ivector.use_lda;
  opts.lda_dim = c.ivector.lda_dim;
  opts.use_wccn = c.ivector.use_wccn;
  opts.use_length_norm = c.ivector.use_length_norm;
  CosineBackend be = fit_backend(ivs, opts);
  ctx.timings_ms["fit"] = fit.ms();

  std::string bin = ctx.path("backend.bin");
  save_backend(be, bin);
  ctx.note(bin);
  std::cout << "backend: " << be.classes.size() << " classes, scoring dim "
            << be.class_means.cols() << " -> " << bin << "\n";
  ctx.finish();
  return 0;
}

int cmd_predict(const GlobalArgs &g) {
  RunContext ctx = make_context("predict", g, /*need_config=*/true);
  const ExperimentConfig &c = ctx.config;

  Stopwatch score;
  std::vector<Prediction> preds;
  std::vector<std::string> classes;
  if (c.classifier.kind == "cosine") {
    CosineBackend be = load_backend(ctx.path("backend.bin"));
    std::vector<IVector> ivs = load_ivectors(ctx.path("ivectors_test.jsonl"));
    preds.resize(ivs.size());
    parallel_for(static_cast<int>(ivs.size()), c.threads, [&](int i) {
      preds[i] = backend_classify(be, ivs[i].v, ivs[i].id);
    });
    classes = be.classes;
  } else {
    ClassifierModel m = load_classifier(ctx.path("classifier.bin"));
    if (m.source == FeatureSource::kIvector) {
      std::vector<IVector> ivs = load_ivectors(ctx.path("ivectors_test.jsonl"));
      preds.resize(ivs.size());
      parallel_for(static_cast<int>(ivs.size()), c.threads, [&](int i) {
        preds[i] = classify_vector(m, ivs[i].v, ivs[i].id);
      });
    } else {
      Dataset test = load_test_split(c);
      preds.resize(test.utterances.size());
      parallel_for(static_cast<int>(test.utterances.size()), c.threads,
                   [&](int i) { preds[i] = classify_utterance(m, test.utterances[i]); });
    }
    classes = m.classes();
  }
  ctx.timings_ms["score"] = score.ms();

  ScoreMatrix sm = scores_from_predictions(system_name(c), classes, preds);
  std::string out = !g.scores_out.empty()
                        ? g.scores_out
                        : ctx.path("scores_" + sm.system + ".json");
  ensure_parent_dir(out);
  save_score_matrix(sm, out);
  ctx.note(out);
  std::cout << "scores: " << preds.size() << " x " << classes.size()
            << " for system '" << sm.system << "' -> " << out << "\n";
  ctx.finish();
  return 0;
}

int cmd_evaluate(const std::string &scores_path, const std::string &manifest,
                 const std::string &report_out, const GlobalArgs &g) {
  RunContext ctx = make_context("evaluate", g, /*need_config=*/false);
  ScoreMatrix sm = load_score_matrix(scores_path);
  Dataset gold = load_dataset(manifest, ctx.config.frame_dir);
  EvalReport rep = evaluate(predictions_from_scores(sm), gold);
  std::cout << "system: " << sm.system << "\n" << format_report(rep);

  std::string out = report_out;
  if (out.empty() && !ctx.out_dir.empty()) out = ctx.path("report.json");
  if (!out.empty()) {
    ensure_parent_dir(out);
    write_report_json(rep, out);
    ctx.note(out);
    std::cout << "report -> " << out << "\n";
  }
  ctx.finish();
  return 0;
}

int cmd_fuse(const std::vector<std::string> &score_paths,
             const std::vector<double> &weights, const std::string &method,
             const GlobalArgs &g) {
  RunContext ctx = make_context("fuse", g, /*need_config=*/false);
  require(!score_paths.empty(), "fuse: at least one --scores path required");

  std::vector<ScoreMatrix> systems;
  for (const std::string &p : score_paths)
    systems.push_back(load_score_matrix(p));

  std::string method_name = method;
  if (method_name.empty())
    method_name = ctx.has_config ? ctx.config.fusion.method : "zscore";
  std::vector<double> w = weights;
  if (w.empty() && ctx.has_config) w = ctx.config.fusion.weights;

  ScoreMatrix fused = fuse(systems, w, norm_method_from_name(method_name));
  std::string out = !g.scores_out.empty() ? g.scores_out
                    : !ctx.out_dir.empty() ? ctx.path("scores_fused.json")
                                           : std::string("scores_fused.json");
  ensure_parent_dir(out);
  save_score_matrix(fused, out);
  ctx.note(out);
  std::cout << "fused " << systems.size() << " systems (" << method_name
            << ") -> " << out << "\n";
  ctx.finish();
  return 0;
}

}  // namespace dialectid
