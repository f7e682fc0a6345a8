// tests/classifiers_test.cc

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

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dialectid/classifiers/linear_svm.h"
#include "dialectid/classifiers/maxent.h"
#include "dialectid/classifiers/model_io.h"
#include "dialectid/classifiers/naive_bayes.h"
#include "dialectid/classifiers/trigram_lm.h"
#include "dialectid/core/rng.h"
#include "testing_support.h"

using namespace dialectid;
using testing::TempDir;

namespace {

// ---------------------------------------------------------------------------
// Reference interpolated-KN model, built with naive scans over the raw event
// list (no shared code or data layout with the production class).
struct KnRef {
  double d = 0.75;
  std::vector<std::array<std::string, 3>> events;  // (u, v, w) per position
  std::set<std::string> vocab;

  static KnRef build(const std::vector<std::vector<std::string>> &seqs,
                     double discount) {
    KnRef r;
    r.d = discount;
    for (const auto &seq : seqs) {
      std::string u = "<s>", v = "<s>";
      std::vector<std::string> padded = seq;
      padded.push_back("</s>");
      for (const auto &w : padded) {
        r.events.push_back({u, v, w});
        u = v;
        v = w;
      }
      for (const auto &w : seq) r.vocab.insert(w);
    }
    return r;
  }

  double floor_prob() const {
    // V counts word types plus the stop symbol; +1 covers <unk>.
    return 1.0 / (static_cast<double>(vocab.size()) + 2.0);
  }

  std::string map(const std::string &tok) const {
    return vocab.count(tok) ? tok : "<unk>";
  }

  double p_uni(const std::string &w) const {
    std::set<std::string> all_vw, all_w;
    std::set<std::string> v_of_w;
    for (const auto &e : events) {
      all_vw.insert(e[1] + "\x01" + e[2]);
      all_w.insert(e[2]);
      if (e[2] == w) v_of_w.insert(e[1]);
    }
    double total = static_cast<double>(all_vw.size());
    if (total == 0.0) return floor_prob();
    double cont = static_cast<double>(v_of_w.size());
    double types = static_cast<double>(all_w.size());
    return std::max(cont - d, 0.0) / total + d * types / total * floor_prob();
  }

  double p_bi(const std::string &v, const std::string &w) const {
    std::set<std::string> u_of_vw;
    std::map<std::string, std::set<std::string>> u_of_vx;  // per continuation
    for (const auto &e : events) {
      if (e[1] != v) continue;
      u_of_vx[e[2]].insert(e[0]);
      if (e[2] == w) u_of_vw.insert(e[0]);
    }
    double total = 0.0;
    for (const auto &kv : u_of_vx) total += static_cast<double>(kv.second.size());
    if (total == 0.0) return p_uni(w);
    double cont = static_cast<double>(u_of_vw.size());
    double types = static_cast<double>(u_of_vx.size());
    return std::max(cont - d, 0.0) / total + d * types / total * p_uni(w);
  }

  double p_tri(const std::string &u, const std::string &v,
               const std::string &w) const {
    int count = 0, total = 0;
    std::set<std::string> types;
    for (const auto &e : events) {
      if (e[0] != u || e[1] != v) continue;
      ++total;
      types.insert(e[2]);
      if (e[2] == w) ++count;
    }
    if (total == 0) return p_bi(v, w);
    double tot = total;
    return std::max(static_cast<double>(count) - d, 0.0) / tot +
           d * static_cast<double>(types.size()) / tot * p_bi(v, w);
  }

  double sequence_log_prob(const std::vector<std::string> &tokens) const {
    std::string u = "<s>", v = "<s>";
    double lp = 0.0;
    std::vector<std::string> padded;
    for (const auto &t : tokens) padded.push_back(map(t));
    padded.push_back("</s>");
    for (const auto &w : padded) {
      lp += std::log(p_tri(u, v, w));
      u = v;
      v = w;
    }
    return lp;
  }

  double perplexity(const std::vector<std::string> &tokens) const {
    return std::exp(-sequence_log_prob(tokens) /
                    static_cast<double>(tokens.size() + 1));
  }
};

std::vector<std::vector<std::string>> random_corpus(Rng *rng, int num_seqs,
                                                    int vocab, int min_len,
                                                    int max_len) {
  std::vector<std::vector<std::string>> seqs(num_seqs);
  for (auto &s : seqs) {
    int len = min_len +
              static_cast<int>(rng->uniform_int(
                  static_cast<uint64_t>(max_len - min_len + 1)));
    for (int i = 0; i < len; ++i)
      s.push_back("t" + std::to_string(rng->uniform_int(vocab)));
  }
  return seqs;
}

SparseVector sparse_of(uint32_t dim,
                       std::vector<std::pair<uint32_t, double>> entries) {
  SparseVector v;
  v.dim = dim;
  v.entries = std::move(entries);
  return v;
}

SparseVector random_sparse(Rng *rng, uint32_t dim, double density = 0.5) {
  SparseVector v;
  v.dim = dim;
  for (uint32_t i = 0; i < dim; ++i)
    if (rng->uniform() < density) v.entries.push_back({i, rng->normal()});
  return v;
}

SparseVector random_binary(Rng *rng, uint32_t dim, double density = 0.5) {
  SparseVector v;
  v.dim = dim;
  for (uint32_t i = 0; i < dim; ++i)
    if (rng->uniform() < density) v.entries.push_back({i, 1.0});
  return v;
}

// Two well-separated Gaussian blobs per class in 2-d.
void make_blobs(Rng *rng, int per_class, std::vector<SparseVector> *x,
                std::vector<std::string> *y) {
  std::vector<std::pair<double, double>> centers = {{4.0, 0.0}, {-4.0, 2.0}};
  std::vector<std::string> labels = {"A", "B"};
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < per_class; ++i) {
      x->push_back(sparse_of(2, {{0, centers[c].first + 0.5 * rng->normal()},
                                 {1, centers[c].second + 0.5 * rng->normal()}}));
      y->push_back(labels[c]);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Kneser-Ney trigram LM

TEST_CASE("kn: conditional distribution over the full event space sums to 1") {
  // Includes the <unk> floor mass; the in-vocab mass alone falls short by
  // exactly P(<unk>|h).
  for (double d : {0.25, 0.5, 0.75, 0.9}) {
    TrigramLm lm = TrigramLm::train({{"a", "b"}}, d);
    std::vector<int> ids = lm.predictable_ids();
    double sum = 0.0;
    for (int w : ids) sum += std::exp(lm.log_prob(TrigramLm::kStart, TrigramLm::kStart, w));
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("kn: hand-computed probabilities, corpus {a b c, a b d} at D=0.5") {
  TrigramLm lm = TrigramLm::train({{"a", "b", "c"}, {"a", "b", "d"}}, 0.5);
  int a = lm.map_token("a"), b = lm.map_token("b"), c = lm.map_token("c");
  REQUIRE(a >= TrigramLm::kFirstWord);

  // Count tables by hand: c(a,b,*) = 2 with continuations {c, d};
  // n(*,b,c) = 1 of n(*,b,*) = 2; n(*,c) = 1 of 6 bigram types, 5 word
  // types ending them; V = 4 words + stop = 5, floor = 1/6.
  // P(c)    = 0.5/6 + 0.5*(5/6)*(1/6)        = 5.5/36
  // P(c|b)  = 0.5/2 + 0.5*(2/2)*P(c)         = 11.75/36
  // P(c|ab) = 0.5/2 + 0.5*(2/2)*P(c|b)       = 14.875/36
  CHECK(lm.log_prob(a, b, c) ==
        doctest::Approx(std::log(14.875 / 36.0)).epsilon(1e-12));

  // P(a)    = 0.5/6 + 0.5*(5/6)*(1/6)        = 5.5/36
  // P(a|*)  = 0.5/1 + 0.5*(1/1)*P(a)         = 20.75/36
  // P(a|**) = 1.5/2 + 0.5*(1/2)*P(a|*)       = 32.1875/36
  CHECK(lm.log_prob(TrigramLm::kStart, TrigramLm::kStart, a) ==
        doctest::Approx(std::log(32.1875 / 36.0)).epsilon(1e-12));

  // The independent reference model agrees with both pinned values.
  KnRef ref = KnRef::build({{"a", "b", "c"}, {"a", "b", "d"}}, 0.5);
  CHECK(ref.p_tri("a", "b", "c") ==
        doctest::Approx(14.875 / 36.0).epsilon(1e-12));
  CHECK(ref.p_tri("<s>", "<s>", "a") ==
        doctest::Approx(32.1875 / 36.0).epsilon(1e-12));
}

TEST_CASE("kn: production model matches the reference on random corpora") {
  Rng rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    double d = 0.25 + 0.5 * rng.uniform();
    auto seqs = random_corpus(&rng, 12, 6, 1, 8);
    TrigramLm lm = TrigramLm::train(seqs, d);
    KnRef ref = KnRef::build(seqs, d);
    for (int t = 0; t < 10; ++t) {
      auto test_toks = random_corpus(&rng, 1, 8, 1, 6)[0];  // some OOV
      CHECK(lm.sequence_log_prob(test_toks) ==
            doctest::Approx(ref.sequence_log_prob(test_toks)).epsilon(1e-10));
      CHECK(lm.perplexity(test_toks) ==
            doctest::Approx(ref.perplexity(test_toks)).epsilon(1e-10));
    }
  }
}

TEST_CASE("kn: perplexity of a 1-token corpus, evaluated on itself") {
  // Two events, each with probability (1-D) + D*((1-D) + D*((1-D)/2 + D/3)).
  TrigramLm lm = TrigramLm::train({{"a"}}, 0.75);
  double event = 0.25 + 0.75 * (0.25 + 0.75 * (0.125 + 0.25));
  CHECK(event == doctest::Approx(0.6484375));
  CHECK(lm.perplexity({"a"}) == doctest::Approx(1.0 / event).epsilon(1e-12));
  CHECK(lm.sequence_log_prob({"a"}) ==
        doctest::Approx(2.0 * std::log(event)).epsilon(1e-12));
}

TEST_CASE("kn: normalization over 200 random observed histories") {
  Rng rng(47);
  auto seqs = random_corpus(&rng, 40, 10, 2, 12);
  TrigramLm lm = TrigramLm::train(seqs, 0.75);
  std::vector<int> ids = lm.predictable_ids();

  // Histories as they occur in the padded training events.
  std::vector<std::pair<int, int>> histories;
  for (const auto &seq : seqs) {
    int u = TrigramLm::kStart, v = TrigramLm::kStart;
    for (const auto &tok : seq) {
      histories.push_back({u, v});
      u = v;
      v = lm.map_token(tok);
    }
    histories.push_back({u, v});
  }
  REQUIRE(histories.size() >= 200);
  rng.shuffle(&histories);
  for (int i = 0; i < 200; ++i) {
    double sum = 0.0;
    for (int w : ids)
      sum += std::exp(lm.log_prob(histories[i].first, histories[i].second, w));
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("kn: perplexity invariant to training-sequence order") {
  Rng rng(53);
  auto seqs = random_corpus(&rng, 15, 7, 1, 9);
  TrigramLm fwd = TrigramLm::train(seqs, 0.75);
  std::vector<std::vector<std::string>> rev(seqs.rbegin(), seqs.rend());
  TrigramLm bwd = TrigramLm::train(rev, 0.75);
  for (int t = 0; t < 10; ++t) {
    auto toks = random_corpus(&rng, 1, 9, 1, 7)[0];
    CHECK(fwd.perplexity(toks) == bwd.perplexity(toks));
  }
}

TEST_CASE("kn: repeated training sequence minimizes perplexity") {
  TrigramLm lm =
      TrigramLm::train({{"x", "y", "z"}, {"x", "y", "z"}, {"x", "y", "z"}}, 0.75);
  double best = lm.perplexity({"x", "y", "z"});
  std::vector<std::vector<std::string>> rivals = {
      {"z", "y", "x"}, {"y", "x", "z"}, {"x", "z", "y"}, {"x", "x", "x"}};
  for (const auto &r : rivals) CHECK(best < lm.perplexity(r));
}

TEST_CASE("kn: OOV-only input stays finite; empty input rejected") {
  TrigramLm lm = TrigramLm::train({{"a", "b"}}, 0.75);
  double ppl = lm.perplexity({"qqq", "zzz"});
  CHECK(std::isfinite(ppl));
  CHECK(ppl > 1.0);
  CHECK_THROWS_AS(lm.perplexity({}), Error);
  CHECK_THROWS_AS(TrigramLm::train({}, 0.75), Error);
  CHECK_THROWS_AS(TrigramLm::train({{"a"}}, 1.5), Error);
}

TEST_CASE("perplexity formula: uniform event probability p gives ppl 1/p") {
  // Stub model over the same definition: M = len+1 events, each 1/V.
  auto stub_ppl = [](int events, double v) {
    double lp = 0.0;
    for (int i = 0; i < events; ++i) lp += std::log(1.0 / v);
    return std::exp(-lp / events);
  };
  CHECK(stub_ppl(5, 17.0) == doctest::Approx(17.0).epsilon(1e-12));
  CHECK(stub_ppl(2, 3.0) == doctest::Approx(3.0).epsilon(1e-12));

  // The production class computes the identical statistic of its own events.
  TrigramLm lm = TrigramLm::train({{"a", "b", "c"}}, 0.6);
  std::vector<std::string> toks = {"a", "c", "b"};
  CHECK(lm.perplexity(toks) ==
        doctest::Approx(std::exp(-lm.sequence_log_prob(toks) / 4.0))
            .epsilon(1e-12));
}

TEST_CASE("classify_by_perplexity picks the lowest-perplexity dialect") {
  TrigramLmSet set;
  set.classes = {"EGY", "LAV"};
  set.models.push_back(TrigramLm::train({{"masr", "helwa"}, {"masr", "keda"}}, 0.75));
  set.models.push_back(TrigramLm::train({{"shu", "fi"}, {"shu", "sar"}}, 0.75));

  Prediction p = classify_by_perplexity(set, {"masr", "helwa"}, "u1");
  CHECK(p.label == "EGY");
  CHECK(p.id == "u1");
  REQUIRE(p.scores.size() == 2);
  CHECK(p.scores[0] ==
        doctest::Approx(-std::log(set.models[0].perplexity({"masr", "helwa"}))));
  CHECK(p.scores[0] > p.scores[1]);
  CHECK(classify_by_perplexity(set, {"shu", "fi"}).label == "LAV");

  SUBCASE("single model returns its dialect") {
    TrigramLmSet one;
    one.classes = {"GLF"};
    one.models.push_back(TrigramLm::train({{"x"}}, 0.75));
    CHECK(classify_by_perplexity(one, {"anything"}).label == "GLF");
  }

  SUBCASE("exact tie breaks to the lowest class index") {
    TrigramLmSet tie;
    tie.classes = {"AAA", "BBB"};
    tie.models.push_back(TrigramLm::train({{"x", "y"}}, 0.75));
    tie.models.push_back(TrigramLm::train({{"x", "y"}}, 0.75));
    CHECK(classify_by_perplexity(tie, {"x", "y"}).label == "AAA");
  }
}

// ---------------------------------------------------------------------------
// Bernoulli Naive Bayes

TEST_CASE("nb: Laplace-smoothed parameters on the 1-doc-per-class corpus") {
  // Token 0 present only in class A: theta_A = (1+1)/(1+2), theta_B = 1/3.
  std::vector<SparseVector> x = {sparse_of(1, {{0, 1.0}}), sparse_of(1, {})};
  std::vector<std::string> y = {"A", "B"};
  NaiveBayesModel m = train_naive_bayes(x, y);
  REQUIRE(m.classes == std::vector<std::string>{"A", "B"});
  CHECK(std::exp(m.log_theta(0, 0)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(std::exp(m.log_theta(1, 0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(std::exp(m.log_prior[0]) == doctest::Approx(0.5));
  CHECK(std::exp(m.log_prior[1]) == doctest::Approx(0.5));

  SUBCASE("degenerate class structure is rejected") {
    CHECK_THROWS_AS(train_naive_bayes({x[0]}, {"A"}), Error);
    CHECK_THROWS_AS(train_naive_bayes({}, {}), Error);
  }
}

TEST_CASE("nb: posterior equals brute force on every input, d<=10 C<=4") {
  Rng rng(61);
  for (int trial = 0; trial < 3; ++trial) {
    uint32_t d = 4 + trial * 3;  // 4, 7, 10
    int num_classes = 2 + trial;  // 2, 3, 4
    std::vector<SparseVector> x;
    std::vector<std::string> y;
    for (int i = 0; i < 40; ++i) {
      x.push_back(random_binary(&rng, d, 0.2 + 0.15 * (i % num_classes)));
      y.push_back("C" + std::to_string(i % num_classes));
    }
    NaiveBayesModel m = train_naive_bayes(x, y);

    // Independent parameter estimates from raw loops.
    std::map<std::string, int> nc;
    std::map<std::string, std::vector<int>> ones;
    for (size_t i = 0; i < x.size(); ++i) {
      nc[y[i]] += 1;
      auto &row = ones[y[i]];
      row.resize(d, 0);
      for (const auto &e : x[i].entries) row[e.first] += 1;
    }

    int checked = 0;
    for (uint32_t mask = 0; mask < (1u << d); ++mask) {
      SparseVector input;
      input.dim = d;
      for (uint32_t i = 0; i < d; ++i)
        if (mask & (1u << i)) input.entries.push_back({i, 1.0});
      Prediction p = nb_classify(m, input, "q");
      for (int c = 0; c < num_classes; ++c) {
        std::string label = "C" + std::to_string(c);
        double lp = std::log(static_cast<double>(nc[label]) / x.size());
        for (uint32_t i = 0; i < d; ++i) {
          double theta = (ones[label][i] + 1.0) / (nc[label] + 2.0);
          lp += (mask & (1u << i)) ? std::log(theta) : std::log(1.0 - theta);
        }
        CHECK(p.scores[c] == doctest::Approx(lp).epsilon(1e-9));
        ++checked;
      }
    }
    CHECK(checked == static_cast<int>((1u << d)) * num_classes);
  }
}

TEST_CASE("nb: identical likelihoods fall back to the larger prior") {
  // 3 A-docs and 1 B-doc, all with identical feature pattern.
  std::vector<SparseVector> x(4, sparse_of(2, {{0, 1.0}}));
  std::vector<std::string> y = {"A", "A", "A", "B"};
  NaiveBayesModel m = train_naive_bayes(x, y);
  CHECK(nb_classify(m, sparse_of(2, {{1, 1.0}}), "q").label == "A");
  CHECK(nb_classify(m, sparse_of(2, {}), "q").label == "A");

  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(nb_classify(m, sparse_of(5, {}), "q"), Error);
  }
}

// ---------------------------------------------------------------------------
// MaxEnt

TEST_CASE("maxent: analytic gradient matches central finite differences") {
  Rng rng(71);
  int n = 20, C = 3;
  uint32_t d = 5;
  std::vector<SparseVector> x;
  std::vector<int> y;
  for (int i = 0; i < n; ++i) {
    x.push_back(random_sparse(&rng, d));
    y.push_back(static_cast<int>(rng.uniform_int(C)));
  }
  DesignMatrix design = build_design_matrix(x);
  Eigen::MatrixXd w(C, d);
  Eigen::VectorXd b(C);
  for (int c = 0; c < C; ++c) {
    b[c] = 0.3 * rng.normal();
    for (uint32_t j = 0; j < d; ++j) w(c, j) = 0.5 * rng.normal();
  }
  double lambda = 1e-2;

  Eigen::MatrixXd gw;
  Eigen::VectorXd gb;
  maxent_gradient(w, b, design, y, lambda, &gw, &gb);

  const double h = 1e-5;
  double max_rel = 0.0;
  auto rel = [&](double analytic, double fd) {
    return std::abs(analytic - fd) / std::max(1.0, std::abs(fd));
  };
  for (int c = 0; c < C; ++c) {
    for (uint32_t j = 0; j < d; ++j) {
      Eigen::MatrixXd wp = w, wm = w;
      wp(c, j) += h;
      wm(c, j) -= h;
      double fd = (maxent_objective(wp, b, design, y, lambda) -
                   maxent_objective(wm, b, design, y, lambda)) /
                  (2 * h);
      max_rel = std::max(max_rel, rel(gw(c, j), fd));
    }
    Eigen::VectorXd bp = b, bm = b;
    bp[c] += h;
    bm[c] -= h;
    double fd = (maxent_objective(w, bp, design, y, lambda) -
                 maxent_objective(w, bm, design, y, lambda)) /
                (2 * h);
    max_rel = std::max(max_rel, rel(gb[c], fd));
  }
  CHECK(max_rel < 1e-4);
}

TEST_CASE("maxent: zero iterations leaves the uniform posterior") {
  Rng rng(73);
  std::vector<SparseVector> x;
  std::vector<std::string> y;
  make_blobs(&rng, 10, &x, &y);
  MaxEntOptions opts;
  opts.max_iters = 0;
  MaxEntModel m = train_maxent(x, y, opts);
  Eigen::VectorXd post = maxent_posterior(m, random_sparse(&rng, 2));
  CHECK(post[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(post[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("maxent: separable blobs reach training accuracy 1.0") {
  Rng rng(79);
  std::vector<SparseVector> x;
  std::vector<std::string> y;
  make_blobs(&rng, 25, &x, &y);
  MaxEntOptions opts;
  opts.lambda = 1e-3;
  MaxEntTrainInfo info;
  MaxEntModel m = train_maxent(x, y, opts, &info);
  int correct = 0;
  for (size_t i = 0; i < x.size(); ++i)
    if (maxent_classify(m, x[i], "q").label == y[i]) ++correct;
  CHECK(correct == static_cast<int>(x.size()));

  SUBCASE("objective strictly decreases across accepted steps") {
    REQUIRE(info.objective.size() >= 2);
    for (size_t i = 1; i < info.objective.size(); ++i)
      CHECK(info.objective[i] < info.objective[i - 1]);
  }

  SUBCASE("posteriors sum to 1 within 1e-9 on random inputs") {
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd post = maxent_posterior(m, random_sparse(&rng, 2, 1.0));
      CHECK(post.sum() == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(post.minCoeff() > 0.0);
    }
  }

  SUBCASE("log-posterior scores rank identically to recomputed affine scores") {
    for (int t = 0; t < 10; ++t) {
      SparseVector v = random_sparse(&rng, 2, 1.0);
      Prediction p = maxent_classify(m, v, "q");
      Eigen::VectorXd s = m.weights * v.to_dense() + m.bias;
      int best = 0;
      for (int c = 1; c < s.size(); ++c)
        if (s[c] > s[best]) best = c;
      CHECK(p.best == best);
    }
  }
}

TEST_CASE("maxent: non-finite features are rejected") {
  std::vector<SparseVector> x = {sparse_of(2, {{0, 1.0}}),
                                 sparse_of(2, {{1, std::nan("")}})};
  std::vector<std::string> y = {"A", "B"};
  CHECK_THROWS_AS(train_maxent(x, y, MaxEntOptions{}), Error);
}

// ---------------------------------------------------------------------------
// Linear SVM

TEST_CASE("svm: symmetric 2-point problem puts the boundary at 0") {
  std::vector<SparseVector> x = {sparse_of(1, {{0, -1.0}}),
                                 sparse_of(1, {{0, 1.0}})};
  std::vector<std::string> y = {"A", "B"};
  SvmOptions opts;
  opts.c_reg = 1.0;
  opts.max_epochs = 100;
  LinearSvmModel m = train_svm(x, y, opts);

  CHECK(svm_classify(m, x[0], "q").label == "A");
  CHECK(svm_classify(m, x[1], "q").label == "B");
  // Scores cross exactly at the midpoint by symmetry.
  Prediction mid = svm_classify(m, sparse_of(1, {}), "q");
  CHECK(std::abs(mid.scores[0] - mid.scores[1]) < 1e-9);
  CHECK(svm_classify(m, sparse_of(1, {{0, -0.2}}), "q").label == "A");
  CHECK(svm_classify(m, sparse_of(1, {{0, 0.2}}), "q").label == "B");
}

TEST_CASE("svm: separable blobs, objective trace, duplication invariance") {
  Rng rng(83);
  std::vector<SparseVector> x;
  std::vector<std::string> y;
  make_blobs(&rng, 25, &x, &y);
  SvmOptions opts;
  opts.c_reg = 10.0;
  opts.max_epochs = 120;
  SvmTrainInfo info;
  LinearSvmModel m = train_svm(x, y, opts, &info);

  int correct = 0;
  for (size_t i = 0; i < x.size(); ++i)
    if (svm_classify(m, x[i], "q").label == y[i]) ++correct;
  CHECK(correct == static_cast<int>(x.size()));

  SUBCASE("reported objective is non-increasing") {
    REQUIRE(info.objective.size() == 120);
    for (size_t i = 1; i < info.objective.size(); ++i)
      CHECK(info.objective[i] <= info.objective[i - 1] + 1e-12);
  }

  SUBCASE("duplicating every training point changes nothing") {
    std::vector<SparseVector> x2 = x;
    std::vector<std::string> y2 = y;
    x2.insert(x2.end(), x.begin(), x.end());
    y2.insert(y2.end(), y.begin(), y.end());
    LinearSvmModel m2 = train_svm(x2, y2, opts);
    CHECK((m.weights - m2.weights).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((m.bias - m2.bias).cwiseAbs().maxCoeff() < 1e-6);
  }

  SUBCASE("same options reproduce the identical model") {
    LinearSvmModel m2 = train_svm(x, y, opts);
    CHECK((m.weights - m2.weights).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m.bias - m2.bias).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("svm: scores are affine; bias-free scores scale with the input") {
  Rng rng(89);
  LinearSvmModel m;
  m.classes = {"A", "B", "C"};
  m.dim = 4;
  m.weights = Eigen::MatrixXd(3, 4);
  for (int c = 0; c < 3; ++c)
    for (int j = 0; j < 4; ++j) m.weights(c, j) = rng.normal();
  m.bias = Eigen::VectorXd::Zero(3);

  for (int t = 0; t < 10; ++t) {
    SparseVector v = random_sparse(&rng, 4, 0.8);
    double alpha = 0.1 + 3.0 * rng.uniform();
    SparseVector scaled = v;
    for (auto &e : scaled.entries) e.second *= alpha;
    Prediction p1 = svm_classify(m, v, "q");
    Prediction p2 = svm_classify(m, scaled, "q");
    for (int c = 0; c < 3; ++c)
      CHECK(p2.scores[c] == doctest::Approx(alpha * p1.scores[c]).epsilon(1e-12));
  }

  SUBCASE("zero weights tie-break to class 0") {
    m.weights.setZero();
    CHECK(svm_classify(m, random_sparse(&rng, 4), "q").label == "A");
  }

  SUBCASE("one-hot weights map one-hot inputs to their class") {
    m.weights = Eigen::MatrixXd::Identity(3, 4);
    for (int c = 0; c < 3; ++c) {
      SparseVector e = sparse_of(4, {{static_cast<uint32_t>(c), 1.0}});
      CHECK(svm_classify(m, e, "q").best == c);
    }
  }
}

TEST_CASE("svm: input validation") {
  std::vector<SparseVector> x = {sparse_of(1, {{0, 1.0}}),
                                 sparse_of(1, {{0, -1.0}})};
  SvmOptions opts;
  CHECK_THROWS_AS(train_svm(x, {"A", "A"}, opts), Error);  // one class
  opts.c_reg = 0.0;
  CHECK_THROWS_AS(train_svm(x, {"A", "B"}, opts), Error);
  std::vector<SparseVector> bad = {sparse_of(1, {{0, 1.0}}),
                                   sparse_of(1, {{0, std::nan("")}})};
  CHECK_THROWS_AS(train_svm(bad, {"A", "B"}, SvmOptions{}), Error);
}

// ---------------------------------------------------------------------------
// Model container round-trips

TEST_CASE("clf1 container round-trips every classifier kind") {
  TempDir dir("clf");
  Rng rng(97);

  // A small word corpus for the token/vsm paths.
  testing::SyntheticSpec spec;
  spec.num_dialects = 3;
  spec.train_per_dialect = 15;
  spec.test_per_dialect = 2;
  spec.word_vocab = 30;
  testing::SyntheticCorpus corpus = testing::make_synthetic_dialects(spec);

  SUBCASE("perplexity models") {
    ClassifierModel m;
    m.kind = ClassifierKind::kPerplexity;
    m.source = FeatureSource::kTokens;
    m.token_spec = TokenSpec{TokenField::kWords, 4};
    m.discount = 0.75;
    TrigramLmSet set;
    std::map<std::string, std::vector<std::vector<std::string>>> grouped;
    for (const auto &u : corpus.train.utterances)
      grouped[u.label].push_back(u.words);
    for (const auto &kv : grouped) {
      set.classes.push_back(kv.first);
      set.models.push_back(TrigramLm::train(kv.second, 0.75));
    }
    m.lms = set;

    std::string path = dir.file("ppl.bin");
    save_classifier(m, path);
    ClassifierModel back = load_classifier(path);
    CHECK(back.kind == ClassifierKind::kPerplexity);
    for (const auto &u : corpus.test.utterances) {
      Prediction p0 = classify_utterance(m, u);
      Prediction p1 = classify_utterance(back, u);
      CHECK(p0.label == p1.label);
      for (size_t c = 0; c < p0.scores.size(); ++c)
        CHECK(p0.scores[c] == p1.scores[c]);
    }
    std::string jpath = dir.file("ppl.json");
    export_classifier_json(m, jpath);
    CHECK(testing::read_file_bytes(jpath).find("perplexity") !=
          std::string::npos);
  }

  SUBCASE("vsm-backed nb, maxent, and svm") {
    VsmBundle bundle;
    bundle.vocab =
        build_vocabulary(corpus.train, TokenSpec{TokenField::kWords, 4}, 1);
    bundle.scaling = fit_idf(build_count_matrix(corpus.train, bundle.vocab));

    std::vector<SparseVector> presence, scaled;
    std::vector<std::string> labels;
    for (const auto &u : corpus.train.utterances) {
      presence.push_back(bundle.presence(u));
      scaled.push_back(bundle.scaled(u));
      labels.push_back(u.label);
    }

    for (const std::string kind : {"naive_bayes", "maxent", "svm"}) {
      ClassifierModel m;
      m.kind = classifier_kind_from_name(kind);
      m.source = FeatureSource::kVsm;
      m.vsm = bundle;
      if (kind == "naive_bayes") {
        m.nb = train_naive_bayes(presence, labels);
      } else if (kind == "maxent") {
        MaxEntOptions o;
        o.max_iters = 50;
        m.maxent = train_maxent(scaled, labels, o);
      } else {
        SvmOptions o;
        o.max_epochs = 50;
        m.svm = train_svm(scaled, labels, o);
      }
      std::string path = dir.file(kind + ".bin");
      save_classifier(m, path);
      ClassifierModel back = load_classifier(path);
      CHECK(back.kind == m.kind);
      CHECK(back.classes() == m.classes());
      for (const auto &u : corpus.test.utterances) {
        Prediction p0 = classify_utterance(m, u);
        Prediction p1 = classify_utterance(back, u);
        CHECK(p0.label == p1.label);
        for (size_t c = 0; c < p0.scores.size(); ++c)
          CHECK(p0.scores[c] == p1.scores[c]);
      }
      export_classifier_json(m, dir.file(kind + ".json"));
      CHECK(testing::read_file_bytes(dir.file(kind + ".json")).find(kind) !=
            std::string::npos);
    }
  }

  SUBCASE("ivector-sourced svm scores dense vectors") {
    std::vector<SparseVector> x;
    std::vector<std::string> y;
    make_blobs(&rng, 10, &x, &y);
    ClassifierModel m;
    m.kind = ClassifierKind::kLinearSvm;
    m.source = FeatureSource::kIvector;
    m.svm = train_svm(x, y, SvmOptions{});
    std::string path = dir.file("ivec_svm.bin");
    save_classifier(m, path);
    ClassifierModel back = load_classifier(path);
    Eigen::VectorXd probe(2);
    probe << 4.0, 0.0;
    CHECK(classify_vector(back, probe, "q").label == "A");
    Utterance u;
    u.id = "q";
    u.words = {"a"};
    CHECK_THROWS_AS(classify_utterance(back, u), Error);
  }
}
