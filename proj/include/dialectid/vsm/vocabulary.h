// vsm/vocabulary.h

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

#ifndef DIALECTID_VSM_VOCABULARY_H_
#define DIALECTID_VSM_VOCABULARY_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "dialectid/corpus/dataset.h"
#include "dialectid/vsm/sparse.h"

namespace dialectid {

enum class TokenField { kWords, kSenones };

// Which utterance field feeds the vector space, and for senones, the maximum
// n-gram order pooled into the dictionary.
struct TokenSpec {
  TokenField field = TokenField::kWords;
  int senone_max_n = 4;

  bool operator==(const TokenSpec &o) const {
    return field == o.field &&
           (field == TokenField::kWords || senone_max_n == o.senone_max_n);
  }
};

std::string token_field_name(TokenField f);
TokenField token_field_from_name(const std::string &name);

// The utterance's token stream under the spec: words verbatim, or the pooled
// senone expansion of its phones.
std::vector<std::string> extract_tokens(const Utterance &u, const TokenSpec &spec);

// Bijective token <-> index map, indices dense in [0, d). Order is corpus
// frequency descending, ties broken lexicographically, so vocabularies are
// reproducible.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> tokens, TokenSpec spec);

  uint32_t size() const { return static_cast<uint32_t>(tokens_.size()); }
  const std::string &token(uint32_t index) const { return tokens_[index]; }
  const std::vector<std::string> &tokens() const { return tokens_; }
  const TokenSpec &spec() const { return spec_; }

  // -1 when out of vocabulary.
  int64_t index_of(const std::string &token) const {
    auto it = index_.find(token);
    return it == index_.end() ? -1 : static_cast<int64_t>(it->second);
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, uint32_t> index_;
  TokenSpec spec_;
};

// Tokens with corpus frequency >= min_count. Throws when nothing survives.
Vocabulary build_vocabulary(const Dataset &d, const TokenSpec &spec,
                            size_t min_count = 1);

// Raw occurrence counts of vocabulary tokens; OOV tokens are ignored.
SparseVector count_vector(const std::vector<std::string> &tokens,
                          const Vocabulary &v);

}  // namespace dialectid

#endif  // DIALECTID_VSM_VOCABULARY_H_
