// eval/metrics.cc

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

#include "dialectid/eval/metrics.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "dialectid/core/error.h"

namespace dialectid {

using nlohmann::json;

int64_t ConfusionMatrix::total() const {
  int64_t t = 0;
  for (const auto &row : counts)
    for (int64_t v : row) t += v;
  return t;
}

int64_t ConfusionMatrix::trace() const {
  int64_t t = 0;
  for (size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
  return t;
}

EvalReport report_from_confusion(const ConfusionMatrix &cm) {
  const size_t c = cm.labels.size();
  require(cm.counts.size() == c, "confusion matrix: bad row count");
  for (const auto &row : cm.counts)
    require(row.size() == c, "confusion matrix: bad column count");
  int64_t total = cm.total();
  require(total > 0, "confusion matrix: no evaluated utterances");

  EvalReport r;
  r.confusion = cm;
  r.metrics.accuracy =
      static_cast<double>(cm.trace()) / static_cast<double>(total);
  double prc_sum = 0.0, rcl_sum = 0.0;
  for (size_t i = 0; i < c; ++i) {
    ClassMetrics m;
    m.label = cm.labels[i];
    int64_t tp = cm.counts[i][i];
    int64_t gold_total = 0, pred_total = 0;
    for (size_t j = 0; j < c; ++j) {
      gold_total += cm.counts[i][j];
      pred_total += cm.counts[j][i];
    }
    if (pred_total > 0) {
      m.precision = static_cast<double>(tp) / static_cast<double>(pred_total);
    } else {
      m.precision_defined = false;  // 0 by convention
    }
    if (gold_total > 0) {
      m.recall = static_cast<double>(tp) / static_cast<double>(gold_total);
    } else {
      m.recall_defined = false;
    }
    prc_sum += m.precision;
    rcl_sum += m.recall;
    r.metrics.per_class.push_back(std::move(m));
  }
  r.metrics.macro_precision = prc_sum / static_cast<double>(c);
  r.metrics.macro_recall = rcl_sum / static_cast<double>(c);
  return r;
}

EvalReport evaluate(const std::vector<Prediction> &predictions,
                    const Dataset &gold) {
  require(!predictions.empty(), "evaluate: no predictions");
  std::unordered_map<std::string, std::string> gold_label;
  for (const auto &u : gold.utterances) gold_label[u.id] = u.label;
  std::unordered_map<std::string, size_t> label_index;
  for (size_t i = 0; i < gold.label_set.size(); ++i)
    label_index[gold.label_set[i]] = i;

  ConfusionMatrix cm;
  cm.labels = gold.label_set;
  cm.counts.assign(cm.labels.size(),
                   std::vector<int64_t>(cm.labels.size(), 0));
  std::unordered_set<std::string> seen;
  for (const auto &p : predictions) {
    require(seen.insert(p.id).second,
            Msg() << "evaluate: duplicate prediction for id '" << p.id << "'");
    auto git = gold_label.find(p.id);
    require(git != gold_label.end(),
            Msg() << "evaluate: id '" << p.id << "' not in the gold manifest");
    require(!git->second.empty(),
            Msg() << "evaluate: gold utterance '" << p.id << "' is unlabeled");
    auto pit = label_index.find(p.label);
    require(pit != label_index.end(),
            Msg() << "evaluate: predicted label '" << p.label
                  << "' not in the gold label set");
    cm.counts[label_index[git->second]][pit->second] += 1;
  }
  return report_from_confusion(cm);
}

std::string format_report(const EvalReport &r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  os << "accuracy " << r.metrics.accuracy << " (" << r.confusion.trace()
     << "/" << r.confusion.total() << ")\n";
  os << "macro precision " << r.metrics.macro_precision
     << "  macro recall " << r.metrics.macro_recall << "\n\n";

  size_t width = 5;
  for (const auto &l : r.confusion.labels) width = std::max(width, l.size());
  os << std::left << std::setw(static_cast<int>(width) + 2) << "class"
     << std::right << std::setw(11) << "precision" << std::setw(11)
     << "recall" << "\n";
  bool flagged = false;
  for (const auto &m : r.metrics.per_class) {
    os << std::left << std::setw(static_cast<int>(width) + 2) << m.label
       << std::right << std::setw(10) << m.precision
       << (m.precision_defined ? " " : "*") << std::setw(10) << m.recall
       << (m.recall_defined ? " " : "*") << "\n";
    flagged = flagged || !m.precision_defined || !m.recall_defined;
  }
  if (flagged) os << "(* zero denominator, 0 by convention)\n";

  os << "\nconfusion (rows = gold)\n";
  os << std::left << std::setw(static_cast<int>(width) + 2) << "";
  for (const auto &l : r.confusion.labels)
    os << std::right << std::setw(static_cast<int>(width) + 2) << l;
  os << "\n";
  for (size_t i = 0; i < r.confusion.labels.size(); ++i) {
    os << std::left << std::setw(static_cast<int>(width) + 2)
       << r.confusion.labels[i];
    for (int64_t v : r.confusion.counts[i])
      os << std::right << std::setw(static_cast<int>(width) + 2) << v;
    os << "\n";
  }
  return os.str();
}

void write_report_json(const EvalReport &r, const std::string &path) {
  json j;
  j["accuracy"] = r.metrics.accuracy;
  j["macro_precision"] = r.metrics.macro_precision;
  j["macro_recall"] = r.metrics.macro_recall;
  j["averaging"] = "macro";
  json per = json::object();
  for (const auto &m : r.metrics.per_class) {
    json e;
    e["precision"] = m.precision;
    e["recall"] = m.recall;
    if (!m.precision_defined) e["precision_zero_denominator"] = true;
    if (!m.recall_defined) e["recall_zero_denominator"] = true;
    per[m.label] = std::move(e);
  }
  j["per_class"] = std::move(per);
  json conf;
  conf["labels"] = r.confusion.labels;
  conf["counts"] = r.confusion.counts;
  j["confusion"] = std::move(conf);
  std::ofstream os(path);
  if (!os) throw Error(Msg() << "cannot open for writing: " << path);
  os << j.dump(2) << '\n';
}

}  // namespace dialectid
