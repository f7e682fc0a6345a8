// classifiers/model_io.cc

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

#include "dialectid/classifiers/model_io.h"

#include <fstream>

#include <json.hpp>

#include "dialectid/core/error.h"
#include "dialectid/core/serialize.h"

namespace dialectid {

using nlohmann::json;

namespace {

constexpr uint32_t kFormatVersion = 1;

json matrix_to_json(const Eigen::MatrixXd &m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd &v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace

std::string classifier_kind_name(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::kPerplexity: return "perplexity";
    case ClassifierKind::kNaiveBayes: return "naive_bayes";
    case ClassifierKind::kMaxEnt: return "maxent";
    case ClassifierKind::kLinearSvm: return "svm";
  }
  throw Error("classifier_kind_name: bad kind");
}

ClassifierKind classifier_kind_from_name(const std::string &s) {
  if (s == "perplexity") return ClassifierKind::kPerplexity;
  if (s == "naive_bayes") return ClassifierKind::kNaiveBayes;
  if (s == "maxent") return ClassifierKind::kMaxEnt;
  if (s == "svm") return ClassifierKind::kLinearSvm;
  throw Error(Msg() << "unknown classifier kind: '" << s
                    << "' (expected perplexity|naive_bayes|maxent|svm)");
}

const std::vector<std::string> &ClassifierModel::classes() const {
  switch (kind) {
    case ClassifierKind::kPerplexity:
      require(lms.has_value(), "classifier has no perplexity models");
      return lms->classes;
    case ClassifierKind::kNaiveBayes:
      require(nb.has_value(), "classifier has no naive bayes payload");
      return nb->classes;
    case ClassifierKind::kMaxEnt:
      require(maxent.has_value(), "classifier has no maxent payload");
      return maxent->classes;
    case ClassifierKind::kLinearSvm:
      require(svm.has_value(), "classifier has no svm payload");
      return svm->classes;
  }
  throw Error("classifier: bad kind");
}

uint32_t ClassifierModel::input_dim() const {
  switch (kind) {
    case ClassifierKind::kPerplexity: return 0;
    case ClassifierKind::kNaiveBayes: return nb ? nb->dim : 0;
    case ClassifierKind::kMaxEnt: return maxent ? maxent->dim : 0;
    case ClassifierKind::kLinearSvm: return svm ? svm->dim : 0;
  }
  return 0;
}

void save_classifier(const ClassifierModel &m, const std::string &path) {
  auto os = open_out(path);
  BinaryWriter w(os);
  w.magic("CLF1");
  w.u32(kFormatVersion);
  w.u32(static_cast<uint32_t>(m.kind));
  w.u32(static_cast<uint32_t>(m.source));
  w.str(token_field_name(m.token_spec.field));
  w.u32(static_cast<uint32_t>(m.token_spec.senone_max_n));
  w.f64(m.discount);
  w.u32(m.lms ? 1 : 0);
  if (m.lms) {
    w.vec_str(m.lms->classes);
    for (const auto &lm : m.lms->models) lm.write(&w);
  }
  w.u32(m.vsm ? 1 : 0);
  if (m.vsm) write_vsm_bundle(&w, *m.vsm);
  w.u32(m.nb ? 1 : 0);
  if (m.nb) m.nb->write(&w);
  w.u32(m.maxent ? 1 : 0);
  if (m.maxent) m.maxent->write(&w);
  w.u32(m.svm ? 1 : 0);
  if (m.svm) m.svm->write(&w);
  if (!os) throw Error(Msg() << "failed writing " << path);
}

ClassifierModel load_classifier(const std::string &path) {
  auto is = open_in(path);
  BinaryReader r(is);
  r.expect_magic("CLF1");
  uint32_t version = r.u32();
  if (version != kFormatVersion)
    throw Error(Msg() << path << ": unsupported CLF1 version " << version);
  ClassifierModel m;
  m.kind = static_cast<ClassifierKind>(r.u32());
  m.source = static_cast<FeatureSource>(r.u32());
  m.token_spec.field = token_field_from_name(r.str());
  m.token_spec.senone_max_n = static_cast<int>(r.u32());
  m.discount = r.f64();
  if (r.u32() != 0) {
    TrigramLmSet set;
    set.classes = r.vec_str();
    for (size_t i = 0; i < set.classes.size(); ++i)
      set.models.push_back(TrigramLm::read(&r));
    m.lms = std::move(set);
  }
  if (r.u32() != 0) m.vsm = read_vsm_bundle(&r);
  if (r.u32() != 0) m.nb = NaiveBayesModel::read(&r);
  if (r.u32() != 0) m.maxent = MaxEntModel::read(&r);
  if (r.u32() != 0) m.svm = LinearSvmModel::read(&r);
  return m;
}

void export_classifier_json(const ClassifierModel &m, const std::string &path) {
  json j;
  j["kind"] = classifier_kind_name(m.kind);
  j["classes"] = m.classes();
  switch (m.source) {
    case FeatureSource::kTokens: j["source"] = "tokens"; break;
    case FeatureSource::kVsm: j["source"] = "vsm"; break;
    case FeatureSource::kIvector: j["source"] = "ivector"; break;
  }
  if (m.kind == ClassifierKind::kPerplexity) {
    j["discount"] = m.discount;
    j["field"] = token_field_name(m.token_spec.field);
    if (m.token_spec.field == TokenField::kSenones)
      j["senone_max_n"] = m.token_spec.senone_max_n;
    json sizes = json::array();
    for (const auto &lm : m.lms->models) sizes.push_back(lm.event_vocab_size());
    j["event_vocab_sizes"] = std::move(sizes);
  }
  if (m.nb) {
    j["dim"] = m.nb->dim;
    j["log_prior"] = vector_to_json(m.nb->log_prior);
    j["log_theta"] = matrix_to_json(m.nb->log_theta);
  }
  if (m.maxent) {
    j["dim"] = m.maxent->dim;
    j["lambda"] = m.maxent->lambda;
    j["weights"] = matrix_to_json(m.maxent->weights);
    j["bias"] = vector_to_json(m.maxent->bias);
  }
  if (m.svm) {
    j["dim"] = m.svm->dim;
    j["c_reg"] = m.svm->c_reg;
    j["weights"] = matrix_to_json(m.svm->weights);
    j["bias"] = vector_to_json(m.svm->bias);
  }
  std::ofstream os(path);
  if (!os) throw Error(Msg() << "cannot open for writing: " << path);
  os << j.dump(2) << '\n';
}

Prediction classify_utterance(const ClassifierModel &m, const Utterance &u) {
  switch (m.source) {
    case FeatureSource::kTokens: {
      require(m.lms.has_value(), "classifier has no perplexity models");
      return classify_by_perplexity(*m.lms, extract_tokens(u, m.token_spec),
                                    u.id);
    }
    case FeatureSource::kVsm: {
      require(m.vsm.has_value(), "classifier has no feature bundle");
      if (m.kind == ClassifierKind::kNaiveBayes)
        return nb_classify(*m.nb, m.vsm->presence(u), u.id);
      SparseVector feat = m.vsm->svd
                              ? SparseVector::from_dense(m.vsm->features(u))
                              : m.vsm->scaled(u);
      if (m.kind == ClassifierKind::kMaxEnt)
        return maxent_classify(*m.maxent, feat, u.id);
      require(m.kind == ClassifierKind::kLinearSvm,
              "classifier kind/source mismatch");
      return svm_classify(*m.svm, feat, u.id);
    }
    case FeatureSource::kIvector:
      throw Error(
          "classify_utterance: this classifier scores precomputed vectors; "
          "use classify_vector");
  }
  throw Error("classify_utterance: bad feature source");
}

Prediction classify_vector(const ClassifierModel &m, const Eigen::VectorXd &v,
                           const std::string &id) {
  SparseVector s = SparseVector::from_dense(v);
  switch (m.kind) {
    case ClassifierKind::kNaiveBayes: return nb_classify(*m.nb, s, id);
    case ClassifierKind::kMaxEnt: return maxent_classify(*m.maxent, s, id);
    case ClassifierKind::kLinearSvm: return svm_classify(*m.svm, s, id);
    case ClassifierKind::kPerplexity:
      throw Error("classify_vector: perplexity models score token streams");
  }
  throw Error("classify_vector: bad kind");
}

}  // namespace dialectid
