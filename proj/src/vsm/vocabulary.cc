// vsm/vocabulary.cc

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

#include "dialectid/vsm/vocabulary.h"

#include <algorithm>
#include <map>

#include "dialectid/core/error.h"
#include "dialectid/corpus/senones.h"

namespace dialectid {

std::string token_field_name(TokenField f) {
  return f == TokenField::kWords ? "words" : "senones";
}

TokenField token_field_from_name(const std::string &name) {
  if (name == "words") return TokenField::kWords;
  if (name == "senones") return TokenField::kSenones;
  throw Error(Msg() << "unknown token field \"" << name
                    << "\" (expected words|senones)");
}

std::vector<std::string> extract_tokens(const Utterance &u,
                                        const TokenSpec &spec) {
  if (spec.field == TokenField::kWords) return u.words;
  return expand_senones(u.phones, spec.senone_max_n);
}

Vocabulary::Vocabulary(std::vector<std::string> tokens, TokenSpec spec)
    : tokens_(std::move(tokens)), spec_(spec) {
  index_.reserve(tokens_.size());
  for (uint32_t i = 0; i < tokens_.size(); ++i) {
    bool inserted = index_.emplace(tokens_[i], i).second;
    require(inserted, "Vocabulary: duplicate token");
  }
}

Vocabulary build_vocabulary(const Dataset &d, const TokenSpec &spec,
                            size_t min_count) {
  require(min_count >= 1, "build_vocabulary: min_count must be >= 1");
  std::map<std::string, size_t> freq;
  for (const auto &u : d.utterances)
    for (auto &tok : extract_tokens(u, spec)) freq[tok] += 1;

  std::vector<std::pair<std::string, size_t>> kept;
  for (auto &kv : freq)
    if (kv.second >= min_count) kept.emplace_back(kv.first, kv.second);
  if (kept.empty())
    throw Error(Msg() << "build_vocabulary: no " << token_field_name(spec.field)
                      << " token reaches min_count " << min_count);

  // Frequency descending, then lexicographic. kept is already sorted by
  // token, so a stable sort on frequency preserves the tie order.
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });

  std::vector<std::string> tokens;
  tokens.reserve(kept.size());
  for (auto &kv : kept) tokens.push_back(std::move(kv.first));
  return Vocabulary(std::move(tokens), spec);
}

SparseVector count_vector(const std::vector<std::string> &tokens,
                          const Vocabulary &v) {
  std::map<uint32_t, double> counts;
  for (const auto &tok : tokens) {
    int64_t idx = v.index_of(tok);
    if (idx >= 0) counts[static_cast<uint32_t>(idx)] += 1.0;
  }
  SparseVector sv;
  sv.dim = v.size();
  sv.entries.assign(counts.begin(), counts.end());
  return sv;
}

}  // namespace dialectid
