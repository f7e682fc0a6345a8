// fusion/fuse.cc

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

#include "dialectid/fusion/fuse.h"

#include <cmath>

#include "dialectid/core/error.h"

namespace dialectid {

std::string norm_method_name(NormMethod m) {
  return m == NormMethod::kZscore ? "zscore" : "minmax";
}

NormMethod norm_method_from_name(const std::string &s) {
  if (s == "zscore") return NormMethod::kZscore;
  if (s == "minmax") return NormMethod::kMinmax;
  throw Error(Msg() << "unknown normalization method: '" << s
                    << "' (expected zscore|minmax)");
}

ScoreMatrix normalize_scores(const ScoreMatrix &m, NormMethod method) {
  m.check();
  ScoreMatrix out = m;
  if (m.scores.size() == 0) return out;
  if (method == NormMethod::kZscore) {
    double mean = m.scores.mean();
    double var = (m.scores.array() - mean).square().mean();
    if (var <= 0.0) {
      out.scores.setZero();
    } else {
      out.scores = (m.scores.array() - mean) / std::sqrt(var);
    }
  } else {
    double lo = m.scores.minCoeff();
    double hi = m.scores.maxCoeff();
    if (hi <= lo) {
      out.scores.setZero();
    } else {
      out.scores = (m.scores.array() - lo) / (hi - lo);
    }
  }
  return out;
}

ScoreMatrix fuse(const std::vector<ScoreMatrix> &systems,
                 std::vector<double> weights, NormMethod method) {
  require(!systems.empty(), "fuse: no systems");
  const ScoreMatrix &first = systems.front();
  for (const auto &s : systems) {
    require(s.ids == first.ids,
            Msg() << "fuse: utterance headers of '" << s.system
                  << "' do not match '" << first.system << "'");
    require(s.classes == first.classes,
            Msg() << "fuse: class headers of '" << s.system
                  << "' do not match '" << first.system << "'");
  }
  if (weights.empty())
    weights.assign(systems.size(), 1.0 / static_cast<double>(systems.size()));
  require(weights.size() == systems.size(),
          Msg() << "fuse: " << weights.size() << " weights for "
                << systems.size() << " systems");
  double total = 0.0;
  for (double w : weights) {
    require(w >= 0.0, "fuse: negative weight");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-9,
          Msg() << "fuse: weights sum to " << total << ", expected 1");

  ScoreMatrix out = first;
  out.system = "fused";
  out.scores.setZero();
  for (size_t i = 0; i < systems.size(); ++i)
    out.scores += weights[i] * normalize_scores(systems[i], method).scores;
  return out;
}

}  // namespace dialectid
