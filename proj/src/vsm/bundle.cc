// vsm/bundle.cc

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

#include "dialectid/vsm/bundle.h"

#include <fstream>

#include <json.hpp>

#include "dialectid/core/error.h"
#include "dialectid/core/serialize.h"

namespace dialectid {

using nlohmann::json;

namespace {

constexpr uint32_t kFormatVersion = 1;
enum Kind : uint32_t { kKindBundle = 3 };

void write_vocab(BinaryWriter *w, const Vocabulary &v) {
  w->str(token_field_name(v.spec().field));
  w->u32(static_cast<uint32_t>(v.spec().senone_max_n));
  w->vec_str(v.tokens());
}

Vocabulary read_vocab(BinaryReader *r) {
  TokenSpec spec;
  spec.field = token_field_from_name(r->str());
  spec.senone_max_n = static_cast<int>(r->u32());
  return Vocabulary(r->vec_str(), spec);
}

void write_scaling(BinaryWriter *w, const ScalingSpec &s) {
  w->u32(static_cast<uint32_t>(s.kind));
  w->vec_f64(s.idf);
}

ScalingSpec read_scaling(BinaryReader *r) {
  ScalingSpec s;
  s.kind = static_cast<ScalingSpec::Kind>(r->u32());
  s.idf = r->vec_f64();
  return s;
}

void write_projection(BinaryWriter *w, const SvdProjection &p) {
  w->matrix(p.basis);
  w->vector(p.singular_values);
  w->f64(p.input_frobenius_sq);
}

SvdProjection read_projection(BinaryReader *r) {
  SvdProjection p;
  p.basis = r->matrix();
  p.singular_values = r->vector();
  p.input_frobenius_sq = r->f64();
  return p;
}

}  // namespace

SparseVector VsmBundle::presence(const Utterance &u) const {
  SparseVector c = counts(u);
  for (auto &e : c.entries) e.second = 1.0;
  return c;
}

Eigen::VectorXd VsmBundle::features(const Utterance &u) const {
  SparseVector s = scaled(u);
  if (svd) return project(s, *svd);
  return s.to_dense();
}

void write_vsm_bundle(BinaryWriter *w, const VsmBundle &b) {
  write_vocab(w, b.vocab);
  write_scaling(w, b.scaling);
  w->u32(b.svd ? 1 : 0);
  if (b.svd) write_projection(w, *b.svd);
}

VsmBundle read_vsm_bundle(BinaryReader *r) {
  VsmBundle b;
  b.vocab = read_vocab(r);
  b.scaling = read_scaling(r);
  if (r->u32() != 0) b.svd = read_projection(r);
  return b;
}

void save_vsm_bundle(const VsmBundle &b, const std::string &path) {
  auto os = open_out(path);
  BinaryWriter w(os);
  w.magic("VSM1");
  w.u32(kFormatVersion);
  w.u32(kKindBundle);
  write_vsm_bundle(&w, b);
  if (!os) throw Error(Msg() << "failed writing " << path);
}

VsmBundle load_vsm_bundle(const std::string &path) {
  auto is = open_in(path);
  BinaryReader r(is);
  r.expect_magic("VSM1");
  uint32_t version = r.u32();
  if (version != kFormatVersion)
    throw Error(Msg() << path << ": unsupported VSM1 version " << version);
  uint32_t kind = r.u32();
  if (kind != kKindBundle)
    throw Error(Msg() << path << ": expected a bundle container");
  return read_vsm_bundle(&r);
}

void export_vsm_bundle_json(const VsmBundle &b, const std::string &path) {
  json j;
  j["field"] = token_field_name(b.vocab.spec().field);
  j["senone_max_n"] = b.vocab.spec().senone_max_n;
  j["vocabulary"] = b.vocab.tokens();
  j["scaling"] = scaling_kind_name(b.scaling.kind);
  if (b.scaling.kind == ScalingSpec::kTfidf) j["idf"] = b.scaling.idf;
  if (b.svd) {
    json s;
    s["k"] = b.svd->k();
    s["singular_values"] = std::vector<double>(
        b.svd->singular_values.data(),
        b.svd->singular_values.data() + b.svd->singular_values.size());
    json rows = json::array();
    for (Eigen::Index r = 0; r < b.svd->basis.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < b.svd->basis.cols(); ++c)
        row.push_back(b.svd->basis(r, c));
      rows.push_back(std::move(row));
    }
    s["basis"] = std::move(rows);
    j["svd"] = std::move(s);
  }
  std::ofstream os(path);
  if (!os) throw Error(Msg() << "cannot open for writing: " << path);
  os << j.dump(2) << '\n';
}

}  // namespace dialectid
