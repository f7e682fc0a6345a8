// corpus/dataset.cc

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

#include "dialectid/corpus/dataset.h"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "dialectid/core/error.h"
#include "dialectid/corpus/frames.h"

namespace dialectid {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string upper(std::string s) {
  for (char &c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> string_array(const json &j, const char *field,
                                      size_t line) {
  if (!j.is_array())
    throw Error(Msg() << "line " << line << ": field '" << field
                      << "' must be an array of strings");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto &e : j) {
    if (!e.is_string())
      throw Error(Msg() << "line " << line << ": field '" << field
                        << "' must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Eigen::MatrixXd inline_frames(const json &j, size_t line) {
  if (j.empty()) throw Error(Msg() << "line " << line << ": empty frames array");
  size_t rows = j.size();
  size_t cols = 0;
  Eigen::MatrixXd m;
  for (size_t r = 0; r < rows; ++r) {
    const auto &row = j[r];
    if (!row.is_array())
      throw Error(Msg() << "line " << line << ": frames must be a 2-D array");
    if (r == 0) {
      cols = row.size();
      if (cols == 0)
        throw Error(Msg() << "line " << line << ": empty frame row");
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (row.size() != cols) {
      throw Error(Msg() << "line " << line << ": frame-width mismatch, row 0 has "
                        << cols << " features but row " << r << " has "
                        << row.size());
    }
    for (size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number())
        throw Error(Msg() << "line " << line << ": frames must be numeric");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          row[c].get<double>();
    }
  }
  return m;
}

}  // namespace

Dataset load_dataset(const std::string &path, const std::string &frame_dir) {
  std::ifstream is(path);
  if (!is) throw Error(Msg() << "manifest not found: " << path);
  fs::path base = frame_dir.empty() ? fs::path(path).parent_path()
                                    : fs::path(frame_dir);

  Dataset d;
  std::unordered_set<std::string> seen_ids;
  std::set<std::string> labels;
  std::string text;
  size_t line = 0;
  while (std::getline(is, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception &e) {
      throw Error(Msg() << "line " << line << ": malformed record: " << e.what());
    }
    if (!j.is_object())
      throw Error(Msg() << "line " << line << ": record must be a JSON object");

    Utterance u;
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty())
      throw Error(Msg() << "line " << line << ": missing or empty 'id'");
    u.id = j["id"].get<std::string>();
    if (!seen_ids.insert(u.id).second)
      throw Error(Msg() << "line " << line << ": duplicate id \"" << u.id << "\"");

    if (j.contains("label") && !j["label"].is_null()) {
      if (!j["label"].is_string())
        throw Error(Msg() << "line " << line << ": 'label' must be a string");
      u.label = upper(j["label"].get<std::string>());
      if (u.label.empty())
        throw Error(Msg() << "line " << line << ": empty label");
    }
    if (j.contains("words")) u.words = string_array(j["words"], "words", line);
    if (j.contains("phones")) {
      u.phones = string_array(j["phones"], "phones", line);
      for (const auto &p : u.phones)
        if (p.empty() || p.find('_') != std::string::npos)
          throw Error(Msg() << "line " << line << ": phone token \"" << p
                            << "\" is empty or contains '_'");
    }
    if (j.contains("frames") && !j["frames"].is_null()) {
      const auto &f = j["frames"];
      if (f.is_string()) {
        fs::path p(f.get<std::string>());
        if (p.is_relative()) p = base / p;
        try {
          u.frames = read_frame_file(p.string());
        } catch (const Error &e) {
          throw Error(Msg() << "line " << line << ": " << e.what());
        }
      } else if (f.is_array()) {
        u.frames = inline_frames(f, line);
      } else {
        throw Error(Msg() << "line " << line
                          << ": 'frames' must be a path or a 2-D array");
      }
    }
    if (u.words.empty() && u.phones.empty() && !u.has_frames())
      throw Error(Msg() << "line " << line << ": utterance \"" << u.id
                        << "\" has no words, phones, or frames");
    if (u.has_label()) labels.insert(u.label);
    d.utterances.push_back(std::move(u));
  }
  d.label_set.assign(labels.begin(), labels.end());
  return d;
}

void save_dataset(const Dataset &d, const std::string &path) {
  std::ofstream os(path);
  if (!os) throw Error(Msg() << "cannot open for writing: " << path);
  for (const auto &u : d.utterances) {
    json j;
    j["id"] = u.id;
    if (u.has_label()) j["label"] = u.label;
    if (!u.words.empty()) j["words"] = u.words;
    if (!u.phones.empty()) j["phones"] = u.phones;
    if (u.has_frames()) {
      json rows = json::array();
      for (Eigen::Index r = 0; r < u.frames.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < u.frames.cols(); ++c)
          row.push_back(u.frames(r, c));
        rows.push_back(std::move(row));
      }
      j["frames"] = std::move(rows);
    }
    os << j.dump() << '\n';
  }
  if (!os) throw Error(Msg() << "failed writing manifest " << path);
}

std::vector<DatasetStatsRow> dataset_stats(const Dataset &d) {
  std::map<std::string, DatasetStatsRow> per_label;
  DatasetStatsRow total;
  total.label = "TOTAL";
  for (const auto &u : d.utterances) {
    total.utterances += 1;
    total.word_tokens += u.words.size();
    total.phone_tokens += u.phones.size();
    if (!u.has_label()) continue;
    auto &row = per_label[u.label];
    row.label = u.label;
    row.utterances += 1;
    row.word_tokens += u.words.size();
    row.phone_tokens += u.phones.size();
  }
  std::vector<DatasetStatsRow> rows;
  rows.reserve(per_label.size() + 1);
  for (auto &kv : per_label) rows.push_back(kv.second);
  rows.push_back(total);
  return rows;
}

void require_all_labeled(const Dataset &d, const std::string &context) {
  for (const auto &u : d.utterances)
    if (!u.has_label())
      throw Error(Msg() << context << ": utterance \"" << u.id
                        << "\" is unlabeled; training requires labels");
}

}  // namespace dialectid
