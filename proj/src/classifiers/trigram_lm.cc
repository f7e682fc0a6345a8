// classifiers/trigram_lm.cc

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

#include "dialectid/classifiers/trigram_lm.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "dialectid/core/error.h"

namespace dialectid {

namespace {
constexpr uint64_t kMaxIds = 1ull << 21;  // ids are packed 21 bits each

template <typename Map>
uint32_t get_or_zero(const Map &m, uint64_t key) {
  auto it = m.find(key);
  return it == m.end() ? 0 : it->second;
}
}  // namespace

TrigramLm TrigramLm::train(
    const std::vector<std::vector<std::string>> &sequences, double discount) {
  require(discount > 0.0 && discount < 1.0,
          "train_trigram_lm: discount must lie in (0,1)");
  bool any_nonempty = false;
  for (const auto &s : sequences) any_nonempty |= !s.empty();
  require(any_nonempty, "train_trigram_lm: empty corpus");

  TrigramLm lm;
  lm.discount_ = discount;

  std::set<std::string> vocab;
  for (const auto &s : sequences) vocab.insert(s.begin(), s.end());
  require(vocab.size() + kFirstWord < kMaxIds,
          "train_trigram_lm: vocabulary too large for packed ids");
  lm.words_.assign(vocab.begin(), vocab.end());
  for (size_t i = 0; i < lm.words_.size(); ++i)
    lm.word_ids_[lm.words_[i]] = kFirstWord + static_cast<int>(i);

  // Raw trigram counts over padded events.
  for (const auto &s : sequences) {
    int h2 = kStart, h1 = kStart;
    for (size_t i = 0; i <= s.size(); ++i) {
      int w = i < s.size() ? lm.word_ids_.at(s[i]) : kStop;
      lm.tri_count_[pack3(h2, h1, w)] += 1;
      h2 = h1;
      h1 = w;
    }
  }

  // Context totals and type counts at the highest order, continuation counts
  // below. Each distinct trigram type (u,v,w) contributes one to n(*,v,w).
  std::set<uint64_t> bigram_types;  // (v,w) with c(v,w) > 0
  for (const auto &kv : lm.tri_count_) {
    uint64_t uvw = kv.first;
    int u = static_cast<int>(uvw >> 42);
    int v = static_cast<int>((uvw >> 21) & (kMaxIds - 1));
    int w = static_cast<int>(uvw & (kMaxIds - 1));
    lm.tri_ctx_total_[pack2(u, v)] += kv.second;
    lm.tri_ctx_types_[pack2(u, v)] += 1;
    lm.cont_bi_[pack2(v, w)] += 1;
    lm.mid_ctx_total_[static_cast<uint64_t>(v)] += 1;
    bigram_types.insert(pack2(v, w));
  }
  for (uint64_t vw : bigram_types) {
    int v = static_cast<int>(vw >> 21);
    int w = static_cast<int>(vw & (kMaxIds - 1));
    lm.mid_ctx_types_[static_cast<uint64_t>(v)] += 1;
    lm.cont_uni_[static_cast<uint64_t>(w)] += 1;
  }
  lm.total_bigram_types_ = bigram_types.size();
  lm.uni_cont_types_ = lm.cont_uni_.size();
  return lm;
}

int TrigramLm::map_token(const std::string &token) const {
  auto it = word_ids_.find(token);
  return it == word_ids_.end() ? kUnk : it->second;
}

double TrigramLm::unigram_prob(int word) const {
  const double uniform = 1.0 / (static_cast<double>(event_vocab_size()) + 1.0);
  if (total_bigram_types_ == 0) return uniform;
  const double total = static_cast<double>(total_bigram_types_);
  double cont = get_or_zero(cont_uni_, static_cast<uint64_t>(word));
  double head = std::max(cont - discount_, 0.0) / total;
  double lambda = discount_ * static_cast<double>(uni_cont_types_) / total;
  return head + lambda * uniform;
}

double TrigramLm::bigram_prob(int hist1, int word) const {
  uint32_t total = get_or_zero(mid_ctx_total_, static_cast<uint64_t>(hist1));
  if (total == 0) return unigram_prob(word);
  double cont = get_or_zero(cont_bi_, pack2(hist1, word));
  double head = std::max(cont - discount_, 0.0) / total;
  double lambda =
      discount_ *
      static_cast<double>(get_or_zero(mid_ctx_types_, static_cast<uint64_t>(hist1))) /
      total;
  return head + lambda * unigram_prob(word);
}

double TrigramLm::log_prob(int hist2, int hist1, int word) const {
  uint32_t total = get_or_zero(tri_ctx_total_, pack2(hist2, hist1));
  if (total == 0) return std::log(bigram_prob(hist1, word));
  double count = get_or_zero(tri_count_, pack3(hist2, hist1, word));
  double head = std::max(count - discount_, 0.0) / total;
  double lambda =
      discount_ * static_cast<double>(get_or_zero(tri_ctx_types_, pack2(hist2, hist1))) /
      total;
  return std::log(head + lambda * bigram_prob(hist1, word));
}

double TrigramLm::sequence_log_prob(
    const std::vector<std::string> &tokens) const {
  require(!tokens.empty(), "perplexity: empty token list");
  double sum = 0.0;
  int h2 = kStart, h1 = kStart;
  for (size_t i = 0; i <= tokens.size(); ++i) {
    int w = i < tokens.size() ? map_token(tokens[i]) : kStop;
    sum += log_prob(h2, h1, w);
    h2 = h1;
    h1 = w;
  }
  return sum;
}

double TrigramLm::perplexity(const std::vector<std::string> &tokens) const {
  const double events = static_cast<double>(tokens.size()) + 1.0;
  return std::exp(-sequence_log_prob(tokens) / events);
}

std::vector<int> TrigramLm::predictable_ids() const {
  std::vector<int> ids;
  ids.reserve(words_.size() + 2);
  ids.push_back(kUnk);
  ids.push_back(kStop);
  for (size_t i = 0; i < words_.size(); ++i)
    ids.push_back(kFirstWord + static_cast<int>(i));
  return ids;
}

namespace {
void write_count_map(BinaryWriter *w,
                     const std::unordered_map<uint64_t, uint32_t> &m) {
  std::vector<std::pair<uint64_t, uint32_t>> items(m.begin(), m.end());
  std::sort(items.begin(), items.end());
  w->u64(items.size());
  for (const auto &kv : items) {
    w->u64(kv.first);
    w->u32(kv.second);
  }
}

std::unordered_map<uint64_t, uint32_t> read_count_map(BinaryReader *r) {
  uint64_t n = r->u64();
  std::unordered_map<uint64_t, uint32_t> m;
  m.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    uint64_t key = r->u64();
    m[key] = r->u32();
  }
  return m;
}
}  // namespace

void TrigramLm::write(BinaryWriter *w) const {
  w->f64(discount_);
  w->vec_str(words_);
  write_count_map(w, tri_count_);
  write_count_map(w, tri_ctx_total_);
  write_count_map(w, tri_ctx_types_);
  write_count_map(w, cont_bi_);
  write_count_map(w, mid_ctx_total_);
  write_count_map(w, mid_ctx_types_);
  write_count_map(w, cont_uni_);
  w->u64(total_bigram_types_);
  w->u64(uni_cont_types_);
}

TrigramLm TrigramLm::read(BinaryReader *r) {
  TrigramLm lm;
  lm.discount_ = r->f64();
  lm.words_ = r->vec_str();
  for (size_t i = 0; i < lm.words_.size(); ++i)
    lm.word_ids_[lm.words_[i]] = kFirstWord + static_cast<int>(i);
  lm.tri_count_ = read_count_map(r);
  lm.tri_ctx_total_ = read_count_map(r);
  lm.tri_ctx_types_ = read_count_map(r);
  lm.cont_bi_ = read_count_map(r);
  lm.mid_ctx_total_ = read_count_map(r);
  lm.mid_ctx_types_ = read_count_map(r);
  lm.cont_uni_ = read_count_map(r);
  lm.total_bigram_types_ = r->u64();
  lm.uni_cont_types_ = r->u64();
  return lm;
}

Prediction classify_by_perplexity(const TrigramLmSet &set,
                                  const std::vector<std::string> &tokens,
                                  const std::string &id) {
  require(!set.models.empty(), "classify_by_perplexity: no models");
  require(set.models.size() == set.classes.size(),
          "classify_by_perplexity: class/model mismatch");
  std::vector<double> scores(set.models.size());
  for (size_t i = 0; i < set.models.size(); ++i)
    scores[i] = -std::log(set.models[i].perplexity(tokens));
  return make_prediction(id, set.classes, std::move(scores));
}

}  // namespace dialectid
