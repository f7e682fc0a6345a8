// corpus/frames.cc

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

#include "dialectid/corpus/frames.h"

#include <cstdint>
#include <vector>

#include "dialectid/core/error.h"
#include "dialectid/core/serialize.h"

namespace dialectid {

Eigen::MatrixXd read_frame_file(const std::string &path) {
  auto is = open_in(path);
  BinaryReader r(is);
  r.expect_magic("FRM1");
  uint32_t t = r.u32(), f = r.u32();
  if (t < 1 || f < 1)
    throw Error(Msg() << "frame file " << path << ": empty matrix " << t << "x"
                      << f);
  std::vector<float> buf(static_cast<size_t>(t) * f);
  is.read(reinterpret_cast<char *>(buf.data()),
          static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (!is) throw Error(Msg() << "frame file " << path << ": truncated data");
  Eigen::MatrixXd m(t, f);
  for (uint32_t i = 0; i < t; ++i)
    for (uint32_t j = 0; j < f; ++j)
      m(i, j) = static_cast<double>(buf[static_cast<size_t>(i) * f + j]);
  return m;
}

void write_frame_file(const std::string &path, const Eigen::MatrixXd &frames) {
  require(frames.rows() >= 1 && frames.cols() >= 1,
          "write_frame_file: empty matrix");
  auto os = open_out(path);
  BinaryWriter w(os);
  w.magic("FRM1");
  w.u32(static_cast<uint32_t>(frames.rows()));
  w.u32(static_cast<uint32_t>(frames.cols()));
  for (Eigen::Index i = 0; i < frames.rows(); ++i)
    for (Eigen::Index j = 0; j < frames.cols(); ++j) {
      float v = static_cast<float>(frames(i, j));
      os.write(reinterpret_cast<const char *>(&v), sizeof v);
    }
  if (!os) throw Error(Msg() << "failed writing frame file " << path);
}

}  // namespace dialectid
