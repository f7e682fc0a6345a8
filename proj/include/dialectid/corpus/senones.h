// corpus/senones.h

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

#ifndef DIALECTID_CORPUS_SENONES_H_
#define DIALECTID_CORPUS_SENONES_H_

#include <string>
#include <vector>

namespace dialectid {

// A senone here is a contiguous phone n-gram, joined with '_'. Expansion
// pools every order n = 1..max_n: all unigrams first, then bigrams, etc.,
// each order in positional order. Output size is
// sum over n of max(0, len - n + 1). Phones must not contain '_'
// (enforced at dataset ingest) so the joined tokens stay unambiguous.
std::vector<std::string> expand_senones(const std::vector<std::string> &phones,
                                        int max_n);

}  // namespace dialectid

#endif  // DIALECTID_CORPUS_SENONES_H_
