// core/serialize.h

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

#ifndef DIALECTID_CORE_SERIALIZE_H_
#define DIALECTID_CORE_SERIALIZE_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dialectid/core/error.h"

namespace dialectid {

static_assert(std::endian::native == std::endian::little,
              "model containers assume a little-endian host");

// Little-endian binary writer for the versioned model containers.
// All multi-byte values are fixed-width; output is byte-identical across runs.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream &os) : os_(os) {}

  void magic(const char tag[5]) { os_.write(tag, 4); }
  void u32(uint32_t v) { raw(&v, sizeof v); }
  void u64(uint64_t v) { raw(&v, sizeof v); }
  void i64(int64_t v) { raw(&v, sizeof v); }
  void f64(double v) { raw(&v, sizeof v); }

  void str(const std::string &s) {
    u64(s.size());
    os_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

  void vec_f64(const std::vector<double> &v) {
    u64(v.size());
    raw(v.data(), v.size() * sizeof(double));
  }

  void vec_str(const std::vector<std::string> &v) {
    u64(v.size());
    for (const auto &s : v) str(s);
  }

  void vector(const Eigen::VectorXd &v) {
    u64(static_cast<uint64_t>(v.size()));
    raw(v.data(), static_cast<size_t>(v.size()) * sizeof(double));
  }

  void matrix(const Eigen::MatrixXd &m) {
    u64(static_cast<uint64_t>(m.rows()));
    u64(static_cast<uint64_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) f64(m(r, c));
  }

 private:
  void raw(const void *p, size_t n) {
    os_.write(static_cast<const char *>(p), static_cast<std::streamsize>(n));
  }
  std::ostream &os_;
};

class BinaryReader {
 public:
  explicit BinaryReader(std::istream &is) : is_(is) {}

  void expect_magic(const char tag[5]) {
    char got[4];
    raw(got, 4);
    if (std::memcmp(got, tag, 4) != 0)
      throw Error(Msg() << "bad container magic, expected " << tag);
  }

  uint32_t u32() { uint32_t v; raw(&v, sizeof v); return v; }
  uint64_t u64() { uint64_t v; raw(&v, sizeof v); return v; }
  int64_t i64() { int64_t v; raw(&v, sizeof v); return v; }
  double f64() { double v; raw(&v, sizeof v); return v; }

  std::string str() {
    uint64_t n = u64();
    std::string s(n, '\0');
    raw(s.data(), n);
    return s;
  }

  std::vector<double> vec_f64() {
    uint64_t n = u64();
    std::vector<double> v(n);
    raw(v.data(), n * sizeof(double));
    return v;
  }

  std::vector<std::string> vec_str() {
    uint64_t n = u64();
    std::vector<std::string> v(n);
    for (auto &s : v) s = str();
    return v;
  }

  Eigen::VectorXd vector() {
    uint64_t n = u64();
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    raw(v.data(), n * sizeof(double));
    return v;
  }

  Eigen::MatrixXd matrix() {
    uint64_t rows = u64(), cols = u64();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows),
                      static_cast<Eigen::Index>(cols));
    for (uint64_t r = 0; r < rows; ++r)
      for (uint64_t c = 0; c < cols; ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = f64();
    return m;
  }

 private:
  void raw(void *p, size_t n) {
    is_.read(static_cast<char *>(p), static_cast<std::streamsize>(n));
    if (!is_) throw Error("truncated container");
  }
  std::istream &is_;
};

inline std::ofstream open_out(const std::string &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(Msg() << "cannot open for writing: " << path);
  return os;
}

inline std::ifstream open_in(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(Msg() << "cannot open: " << path);
  return is;
}

}  // namespace dialectid

#endif  // DIALECTID_CORE_SERIALIZE_H_
