// Copyright 2026 The Komatsu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "komatsu/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "komatsu/error.hpp"

namespace komatsu {
namespace {

std::string half_label(std::int64_t two) {
  if (two % 2 == 0) return std::to_string(two / 2);
  return (two < 0 ? "-" : "") + std::to_string(std::abs(two) / 2) + ".5";
}

std::int64_t parse_twice(const std::string& s) {
  double v = 0.0;
  try {
    v = std::stod(s);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidInput, "malformed index '" + s + "'");
  }
  double t = 2.0 * v;
  if (std::abs(t - std::round(t)) > 1e-9) throw Error(ErrorCode::kInvalidInput, "index '" + s + "' is not a half-integer");
  return static_cast<std::int64_t>(std::llround(t));
}

std::string class_label(const RepIndex& rep) {
  switch (rep.kind) {
    case GroupKind::kTorus: return std::to_string(rep.k.at(0));
    case GroupKind::kSU2: return half_label(rep.two_l);
    case GroupKind::kTrivial: return "0";
  }
  return "0";
}

std::string row_label(const RepIndex& rep, std::int64_t row) {
  return rep.kind == GroupKind::kSU2 ? half_label(su2_two_m(rep.two_l, row)) : "0";
}

RepIndex class_from(const GroupTag& g, std::int64_t twice) {
  switch (g.kind) {
    case GroupKind::kTorus:
      if (twice % 2 != 0) throw Error(ErrorCode::kInvalidInput, "torus index must be an integer");
      return RepIndex::torus1(twice / 2);
    case GroupKind::kSU2:
      if (twice < 0) throw Error(ErrorCode::kInvalidInput, "negative spin");
      return RepIndex::su2(twice);
    case GroupKind::kTrivial:
      if (twice != 0) throw Error(ErrorCode::kInvalidInput, "trivial factor carries label 0");
      return RepIndex::trivial();
  }
  return RepIndex::trivial();
}

std::int64_t row_from(const RepIndex& rep, std::int64_t twice) {
  if (rep.kind != GroupKind::kSU2) {
    if (twice != 0) throw Error(ErrorCode::kInvalidInput, "torus and trivial rows carry label 0");
    return 1;
  }
  if (std::abs(twice) > rep.two_l || (rep.two_l - twice) % 2 != 0) {
    throw Error(ErrorCode::kInvalidInput, "SU2 weight outside its class");
  }
  return su2_row(rep.two_l, twice);
}


}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_field_csv(const CoefficientField& c, std::ostream& out) {
  out << "k,l,m,n,r,s,re,im\n";
  for (const auto& [key, blk] : c.blocks()) {
    const auto& [xi, eta] = key;
    for (std::int64_t m = 1; m <= blk.d1; ++m) {
      for (std::int64_t n = 1; n <= blk.d1; ++n) {
        for (std::int64_t r = 1; r <= blk.d2; ++r) {
          for (std::int64_t s = 1; s <= blk.d2; ++s) {
            const cplx v = blk.at(m, n, r, s);
            if (v == 0.0) continue;
            out << class_label(xi) << ',' << class_label(eta) << ',' << row_label(xi, m) << ','
                << row_label(xi, n) << ',' << row_label(eta, r) << ',' << row_label(eta, s) << ','
                << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
          }
        }
      }
    }
  }
}

CoefficientField read_field_csv(std::istream& in, const GroupTag& g1, const GroupTag& g2,
                                std::optional<Truncation> band) {
  struct Entry {
    RepIndex xi, eta;
    std::int64_t m, n, r, s;
    cplx v;
  };
  std::vector<Entry> entries;
  std::string line;
  Truncation inferred;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1 && line.rfind("k,", 0) == 0) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) cols.push_back(tok);
    if (cols.size() != 8) {
      throw Error(ErrorCode::kInvalidInput, "line " + std::to_string(lineno) + ": expected 8 columns");
    }
    Entry e;
    e.xi = class_from(g1, parse_twice(cols[0]));
    e.eta = class_from(g2, parse_twice(cols[1]));
    e.m = row_from(e.xi, parse_twice(cols[2]));
    e.n = row_from(e.xi, parse_twice(cols[3]));
    e.r = row_from(e.eta, parse_twice(cols[4]));
    e.s = row_from(e.eta, parse_twice(cols[5]));
    try {
      e.v = cplx(std::stod(cols[6]), std::stod(cols[7]));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidInput, "line " + std::to_string(lineno) + ": malformed value");
    }
    inferred.cut1 = std::max(inferred.cut1, class_cut(e.xi));
    inferred.cut2 = std::max(inferred.cut2, class_cut(e.eta));
    entries.push_back(std::move(e));
  }
  CoefficientField c(g1, g2, band.value_or(inferred));
  for (const auto& e : entries) {
    if (!c.contains(e.xi, e.eta)) throw Error(ErrorCode::kTruncationMismatch, "entry outside declared band");
    c.block(e.xi, e.eta).at(e.m, e.n, e.r, e.s) = e.v;
  }
  return c;
}

nlohmann::json field_manifest(const CoefficientField& c) {
  return {
      {"schema", "komatsu.field/1"},
      {"groups", {c.group1().name(), c.group2().name()}},
      {"band", {c.band().cut1, c.band().cut2}},
      {"conventions",
       {{"haar", "normalized to total mass 1"},
        {"synthesis", "f(x) = sum d_xi d_eta Tr((xi x eta)(x) F)"},
        {"su2_coefficient", "t^l_mn(phi,theta,psi) = exp(i m phi) d^l_mn(theta) exp(i n psi)"},
        {"flat_index", "i = d_eta (m-1) + r, j = d_eta (n-1) + s"},
        {"band_meaning", "|k| <= cut on T1, l <= cut on SU2"}}},
  };
}

void save_field(const CoefficientField& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
  write_field_csv(c, out);
  std::ofstream man(path + ".json");
  if (!man) throw Error(ErrorCode::kInvalidInput, "cannot write " + path + ".json");
  man << field_manifest(c).dump(2) << '\n';
}

CoefficientField load_field(const std::string& path, std::optional<GroupTag> g1,
                            std::optional<GroupTag> g2) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot read " + path);
  std::optional<Truncation> band;
  std::ifstream man(path + ".json");
  if (man) {
    nlohmann::json j;
    try {
      man >> j;
      g1 = GroupTag::parse(j.at("groups").at(0).get<std::string>());
      g2 = GroupTag::parse(j.at("groups").at(1).get<std::string>());
      band = Truncation{j.at("band").at(0).get<std::int64_t>(), j.at("band").at(1).get<std::int64_t>()};
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidInput, "malformed manifest " + path + ".json: " + e.what());
    }
  }
  if (!g1 || !g2) throw Error(ErrorCode::kInvalidInput, "field groups unknown: no manifest next to " + path);
  return read_field_csv(in, *g1, *g2, band);
}

}  // namespace komatsu
