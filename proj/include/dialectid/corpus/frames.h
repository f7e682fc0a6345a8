// corpus/frames.h

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

#ifndef DIALECTID_CORPUS_FRAMES_H_
#define DIALECTID_CORPUS_FRAMES_H_

#include <string>

#include <Eigen/Core>

namespace dialectid {

// Frame files hold one T x F feature matrix:
//   magic "FRM1", uint32 T, uint32 F, then T*F float32 row-major,
// all little-endian. Values are widened to double in memory.
Eigen::MatrixXd read_frame_file(const std::string &path);
void write_frame_file(const std::string &path, const Eigen::MatrixXd &frames);

}  // namespace dialectid

#endif  // DIALECTID_CORPUS_FRAMES_H_
