// classifiers/trigram_lm.h

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

#ifndef DIALECTID_CLASSIFIERS_TRIGRAM_LM_H_
#define DIALECTID_CLASSIFIERS_TRIGRAM_LM_H_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "dialectid/classifiers/prediction.h"
#include "dialectid/core/serialize.h"

namespace dialectid {

// Trigram model with interpolated Kneser-Ney smoothing, one fixed discount D
// at every order. Sequences are padded as  * * w_1 ... w_n </s>  and the
// model scores the n+1 prediction events per sequence, including the stop
// symbol. Tokens unseen in training map to a reserved <unk> id; the unigram
// level interpolates with a uniform 1/(V+1) floor over vocab + stop + <unk>,
// so every event has positive probability.
//
//   P(w|u,v) = max(c(u,v,w)-D,0)/c(u,v,*) + D*t(u,v)/c(u,v,*) * P(w|v)
//   P(w|v)   = max(n(*,v,w)-D,0)/n(*,v,*) + D*t(v)/n(*,v,*)   * P(w)
//   P(w)     = max(n(*,w)-D,0)/n(*,*)     + D*t()/n(*,*)      * 1/(V+1)
//
// where n(...) are continuation (distinct-context) counts and t(...) the
// number of distinct continuations of the history. A history with zero total
// backs off entirely to the next order.
class TrigramLm {
 public:
  static constexpr int kUnk = 0;
  static constexpr int kStart = 1;
  static constexpr int kStop = 2;
  static constexpr int kFirstWord = 3;

  TrigramLm() = default;

  // discount must lie in (0,1); at least one non-empty sequence required.
  static TrigramLm train(const std::vector<std::vector<std::string>> &sequences,
                         double discount);

  // Token id, or kUnk when out of vocabulary.
  int map_token(const std::string &token) const;

  // ln P(word | hist2, hist1) over internal ids.
  double log_prob(int hist2, int hist1, int word) const;

  // Sum of ln P over the padded events of the sequence (tokens mapped first).
  double sequence_log_prob(const std::vector<std::string> &tokens) const;

  // exp(-(1/M) * sequence_log_prob), M = len+1 events including </s>.
  double perplexity(const std::vector<std::string> &tokens) const;

  // Number of word types + 1 for the stop symbol (the V of the uniform floor).
  uint32_t event_vocab_size() const {
    return static_cast<uint32_t>(words_.size()) + 1;
  }
  double discount() const { return discount_; }

  // All ids a conditional distribution ranges over: words, </s>, <unk>.
  std::vector<int> predictable_ids() const;

  void write(BinaryWriter *w) const;
  static TrigramLm read(BinaryReader *r);

 private:
  static uint64_t pack2(int a, int b) {
    return (static_cast<uint64_t>(a) << 21) | static_cast<uint64_t>(b);
  }
  static uint64_t pack3(int a, int b, int c) {
    return (static_cast<uint64_t>(a) << 42) |
           (static_cast<uint64_t>(b) << 21) | static_cast<uint64_t>(c);
  }

  double unigram_prob(int word) const;
  double bigram_prob(int hist1, int word) const;

  double discount_ = 0.75;
  std::vector<std::string> words_;  // id kFirstWord + i -> word, sorted
  std::unordered_map<std::string, int> word_ids_;

  // Highest order: raw counts.
  std::unordered_map<uint64_t, uint32_t> tri_count_;      // (u,v,w)
  std::unordered_map<uint64_t, uint32_t> tri_ctx_total_;  // (u,v) -> c(u,v,*)
  std::unordered_map<uint64_t, uint32_t> tri_ctx_types_;  // (u,v) -> distinct w

  // Middle order: continuation counts n(*,v,w) = |{u : c(u,v,w)>0}|.
  std::unordered_map<uint64_t, uint32_t> cont_bi_;        // (v,w)
  std::unordered_map<uint64_t, uint32_t> mid_ctx_total_;  // v -> n(*,v,*)
  std::unordered_map<uint64_t, uint32_t> mid_ctx_types_;  // v -> distinct w

  // Lowest order: n(*,w) = |{v : bigram (v,w) occurs}|.
  std::unordered_map<uint64_t, uint32_t> cont_uni_;  // w
  uint64_t total_bigram_types_ = 0;                  // n(*,*)
  uint64_t uni_cont_types_ = 0;  // distinct w with n(*,w) > 0
};

// One Kneser-Ney model per dialect, trained on that dialect's utterances.
struct TrigramLmSet {
  std::vector<std::string> classes;  // sorted dialect labels
  std::vector<TrigramLm> models;     // aligned with classes
};

// Per-class score is -ln(perplexity); the argmax is the lowest-perplexity
// dialect, ties to the lowest class index.
Prediction classify_by_perplexity(const TrigramLmSet &set,
                                  const std::vector<std::string> &tokens,
                                  const std::string &id = "");

}  // namespace dialectid

#endif  // DIALECTID_CLASSIFIERS_TRIGRAM_LM_H_
