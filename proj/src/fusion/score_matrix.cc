// fusion/score_matrix.cc

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

#include "dialectid/fusion/score_matrix.h"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "dialectid/core/error.h"

namespace dialectid {

using nlohmann::json;

void ScoreMatrix::check() const {
  require(scores.rows() == static_cast<Eigen::Index>(ids.size()) &&
              scores.cols() == static_cast<Eigen::Index>(classes.size()),
          "score matrix: header/shape mismatch");
  require(scores.allFinite(), "score matrix: non-finite scores");
  std::unordered_set<std::string> seen;
  for (const auto &id : ids)
    require(seen.insert(id).second,
            Msg() << "score matrix: duplicate utterance id '" << id << "'");
}

ScoreMatrix scores_from_predictions(const std::string &system,
                                    const std::vector<std::string> &classes,
                                    const std::vector<Prediction> &preds) {
  ScoreMatrix m;
  m.system = system;
  m.classes = classes;
  m.ids.reserve(preds.size());
  m.scores.resize(static_cast<Eigen::Index>(preds.size()),
                  static_cast<Eigen::Index>(classes.size()));
  for (size_t i = 0; i < preds.size(); ++i) {
    require(preds[i].scores.size() == classes.size(),
            "scores_from_predictions: class count mismatch");
    m.ids.push_back(preds[i].id);
    for (size_t c = 0; c < classes.size(); ++c)
      m.scores(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          preds[i].scores[c];
  }
  m.check();
  return m;
}

std::vector<Prediction> predictions_from_scores(const ScoreMatrix &m) {
  m.check();
  std::vector<Prediction> out;
  out.reserve(m.ids.size());
  for (size_t i = 0; i < m.ids.size(); ++i) {
    Eigen::VectorXd row = m.scores.row(static_cast<Eigen::Index>(i));
    out.push_back(make_prediction(
        m.ids[i], m.classes,
        std::vector<double>(row.data(), row.data() + row.size())));
  }
  return out;
}

void save_score_matrix(const ScoreMatrix &m, const std::string &path) {
  m.check();
  json j;
  j["system"] = m.system;
  j["ids"] = m.ids;
  j["classes"] = m.classes;
  std::vector<double> flat;
  flat.reserve(static_cast<size_t>(m.scores.size()));
  for (Eigen::Index r = 0; r < m.scores.rows(); ++r)
    for (Eigen::Index c = 0; c < m.scores.cols(); ++c)
      flat.push_back(m.scores(r, c));
  j["scores"] = std::move(flat);
  std::ofstream os(path);
  if (!os) throw Error(Msg() << "cannot open for writing: " << path);
  os << j.dump(2) << '\n';
  if (!os) throw Error(Msg() << "failed writing " << path);
}

ScoreMatrix load_score_matrix(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error(Msg() << "cannot open: " << path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception &e) {
    throw Error(Msg() << path << ": " << e.what());
  }
  ScoreMatrix m;
  try {
    m.system = j.value("system", std::string());
    m.ids = j.at("ids").get<std::vector<std::string>>();
    m.classes = j.at("classes").get<std::vector<std::string>>();
    std::vector<double> flat = j.at("scores").get<std::vector<double>>();
    require(flat.size() == m.ids.size() * m.classes.size(),
            Msg() << path << ": scores array has " << flat.size()
                  << " entries, expected " << m.ids.size() * m.classes.size());
    m.scores.resize(static_cast<Eigen::Index>(m.ids.size()),
                    static_cast<Eigen::Index>(m.classes.size()));
    size_t at = 0;
    for (Eigen::Index r = 0; r < m.scores.rows(); ++r)
      for (Eigen::Index c = 0; c < m.scores.cols(); ++c)
        m.scores(r, c) = flat[at++];
  } catch (const json::exception &e) {
    throw Error(Msg() << path << ": " << e.what());
  }
  m.check();
  return m;
}

}  // namespace dialectid
