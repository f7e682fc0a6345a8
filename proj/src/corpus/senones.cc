// corpus/senones.cc

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

#include "dialectid/corpus/senones.h"

#include "dialectid/core/error.h"

namespace dialectid {

std::vector<std::string> expand_senones(const std::vector<std::string> &phones,
                                        int max_n) {
  require(max_n >= 1, "expand_senones: max_n must be >= 1");
  const size_t len = phones.size();
  std::vector<std::string> out;
  size_t total = 0;
  for (int n = 1; n <= max_n; ++n)
    if (len + 1 > static_cast<size_t>(n)) total += len - n + 1;
  out.reserve(total);
  for (int n = 1; n <= max_n; ++n) {
    if (len + 1 <= static_cast<size_t>(n)) break;
    for (size_t i = 0; i + n <= len; ++i) {
      std::string gram = phones[i];
      for (size_t j = 1; j < static_cast<size_t>(n); ++j) {
        gram += '_';
        gram += phones[i + j];
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

}  // namespace dialectid
