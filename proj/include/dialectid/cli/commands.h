// cli/commands.h

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

#ifndef DIALECTID_CLI_COMMANDS_H_
#define DIALECTID_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dialectid/cli/config.h"

namespace dialectid {

// Global flags; set fields override the config file.
struct GlobalArgs {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<int> threads;
  std::string scores_out;
  std::string out_dir;
};

// Each command returns a process exit code (0 = success) and reports
// failures by throwing; main() turns exceptions into machine-readable
// errors. Every artifact-producing run also writes out_dir/run_<cmd>.json
// with the resolved config, its hash, the seed, and timings.
int cmd_stats(const std::vector<std::string> &manifests, const GlobalArgs &g);
int cmd_build_vsm(const GlobalArgs &g);
int cmd_train(const GlobalArgs &g);
int cmd_train_ubm(const GlobalArgs &g);
int cmd_train_tv(const GlobalArgs &g);
int cmd_extract_ivectors(const GlobalArgs &g);
int cmd_fit_backend(const GlobalArgs &g);
int cmd_predict(const GlobalArgs &g);
int cmd_evaluate(const std::string &scores_path, const std::string &manifest,
                 const std::string &report_out, const GlobalArgs &g);
int cmd_fuse(const std::vector<std::string> &score_paths,
             const std::vector<double> &weights, const std::string &method,
             const GlobalArgs &g);

}  // namespace dialectid

#endif  // DIALECTID_CLI_COMMANDS_H_
