// core/error.h

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

#ifndef DIALECTID_CORE_ERROR_H_
#define DIALECTID_CORE_ERROR_H_

#include <sstream>
#include <stdexcept>
#include <string>

namespace dialectid {

// All recoverable failures (bad input files, contract violations, numerical
// degeneracy) are reported as Error; the CLI turns them into nonzero exits.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Stream-style message builder: throw Error(Msg() << "bad id " << id);
class Msg {
 public:
  template <typename T>
  Msg &operator<<(const T &v) {
    os_ << v;
    return *this;
  }
  operator std::string() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

inline void require(bool cond, const std::string &msg) {
  if (!cond) throw Error(msg);
}

}  // namespace dialectid

#endif  // DIALECTID_CORE_ERROR_H_
