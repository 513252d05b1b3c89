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

#include "komatsu/spec_io.hpp"

#include <fstream>
#include <vector>

#include "komatsu/error.hpp"

namespace komatsu {
namespace {

using nlohmann::json;

template <class T>
T get_field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kInvalidInput, std::string(what) + ": missing '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string(what) + ": bad '" + key + "': " + e.what());
  }
}

FactorRule parse_rule(const json& j, const char* what) {
  FactorRule r;
  r.group = GroupTag::parse(get_field<std::string>(j, "group", what));
  if (j.contains("coef")) {
    const ExactScalar c = parse_scalar(j.at("coef"));
    if (!c.exact || c.uses_alpha() || c.im0 != 0) {
      throw Error(ErrorCode::kInvalidInput, std::string(what) + ": coef must be an exact real rational");
    }
    r.coef = c.re0;
  }
  if (r.group.kind == GroupKind::kTrivial) r.coef = 0;
  return r;
}

const char* pattern_name(ContinuedFraction::Pattern p) {
  switch (p) {
    case ContinuedFraction::Pattern::kFactorialPow10: return "factorial-pow10";
    case ContinuedFraction::Pattern::kLiouville: return "liouville";
    case ContinuedFraction::Pattern::kGolden: return "golden";
    case ContinuedFraction::Pattern::kSqrt2: return "sqrt2";
    case ContinuedFraction::Pattern::kFinite: break;
  }
  return "finite";
}

bool is_cf_object(const json& j) { return j.is_object() && (j.contains("cf") || j.contains("pattern")); }

}  // namespace

WeightSequence parse_sequence(const json& j) {
  const auto kind = get_field<std::string>(j, "kind", "sequence");
  if (kind == "gevrey") {
    const auto s = get_field<double>(j, "s", "sequence");
    if (j.contains("kmax")) return WeightSequence::gevrey(s, get_field<std::int64_t>(j, "kmax", "sequence"));
    return WeightSequence::gevrey(s);
  }
  if (kind == "factorial-power") {
    return WeightSequence::factorial_power_table(get_field<double>(j, "s", "sequence"),
                                                 j.contains("kmax") ? get_field<std::int64_t>(j, "kmax", "sequence") : 4096);
  }
  if (kind == "table") {
    if (j.contains("log_m")) return WeightSequence::from_log_table(get_field<std::vector<double>>(j, "log_m", "sequence"));
    const auto v = get_field<std::vector<double>>(j, "values", "sequence");
    return WeightSequence::from_values(v);
  }
  throw Error(ErrorCode::kInvalidInput, "sequence: unknown kind '" + kind + "'");
}

json sequence_to_json(const WeightSequence& seq) {
  json j{{"kind", seq.kind_name()}, {"kmax", seq.kmax()}};
  if (seq.kind() != WeightKind::kUserTable) j["s"] = seq.gevrey_order();
  return j;
}

ContinuedFraction parse_continued_fraction(const json& j) {
  if (j.is_string()) return ContinuedFraction::from_pattern(j.get<std::string>());
  if (j.is_object() && j.contains("pattern")) {
    return ContinuedFraction::from_pattern(get_field<std::string>(j, "pattern", "continued fraction"));
  }
  if (j.is_object() && j.contains("cf")) {
    const json& d = j.at("cf");
    if (!d.is_array() || d.empty()) throw Error(ErrorCode::kInvalidInput, "continued fraction: 'cf' must be a nonempty list");
    std::vector<mpz_class> digits;
    for (const auto& x : d) {
      try {
        if (x.is_string()) {
          digits.emplace_back(x.get<std::string>());
        } else if (x.is_number_integer()) {
          digits.emplace_back(x.get<long>());
        } else {
          throw Error(ErrorCode::kInvalidInput, "continued fraction digits must be integers");
        }
      } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::kInvalidInput, "malformed continued fraction digit");
      }
    }
    return ContinuedFraction::finite(std::move(digits));
  }
  throw Error(ErrorCode::kInvalidInput, "continued fraction: expected a pattern name or {\"cf\": [...]}");
}

ExactScalar parse_scalar(const json& j) {
  if (j.is_string()) return ExactScalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return ExactScalar::rational(mpq_class(j.get<long>()));
  if (j.is_number()) return ExactScalar::inexact(j.get<double>());
  if (j.is_object() && (j.contains("re") || j.contains("im"))) {
    ExactScalar re = j.contains("re") ? parse_scalar(j.at("re")) : ExactScalar::rational(0);
    ExactScalar im = j.contains("im") ? parse_scalar(j.at("im")) : ExactScalar::rational(0);
    if (re.im0 != 0 || re.im_alpha != 0 || im.im0 != 0 || im.im_alpha != 0) {
      throw Error(ErrorCode::kInvalidInput, "scalar parts must be real");
    }
    ExactScalar out;
    out.re0 = re.re0;
    out.re_alpha = re.re_alpha;
    out.im0 = im.re0;
    out.im_alpha = im.re_alpha;
    out.exact = re.exact && im.exact;
    return out;
  }
  throw Error(ErrorCode::kInvalidInput, "unrecognised scalar");
}

VectorFieldSpec parse_operator(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidInput, "operator: expected an object");
  VectorFieldSpec spec;
  spec.x1 = parse_rule(j.contains("x1") ? j.at("x1") : json(), "operator x1");
  if (j.contains("x2")) spec.x2 = parse_rule(j.at("x2"), "operator x2");
  if (j.contains("alpha")) spec.alpha = parse_continued_fraction(j.at("alpha"));
  if (j.contains("a")) {
    if (is_cf_object(j.at("a"))) {
      if (spec.alpha) throw Error(ErrorCode::kInvalidInput, "operator: 'a' given as a continued fraction next to 'alpha'");
      spec.alpha = parse_continued_fraction(j.at("a"));
      spec.a = ExactScalar::alpha_multiple(1);
    } else {
      spec.a = parse_scalar(j.at("a"));
    }
  }
  if (j.contains("q")) spec.q = parse_scalar(j.at("q"));
  spec.validate();
  return spec;
}

json operator_to_json(const VectorFieldSpec& spec) {
  json j{{"x1", {{"group", spec.x1.group.name()}, {"coef", spec.x1.coef.get_str()}}},
         {"x2", {{"group", spec.x2.group.name()}, {"coef", spec.x2.coef.get_str()}}},
         {"a", spec.a.to_string()},
         {"q", spec.q.to_string()}};
  if (spec.alpha) {
    if (spec.alpha->rational()) {
      json d = json::array();
      for (int i = 0; i < spec.alpha->available_digits(); ++i) d.push_back(spec.alpha->digit(i).get_str());
      j["alpha"] = {{"cf", d}};
    } else {
      j["alpha"] = {{"pattern", pattern_name(spec.alpha->pattern())}};
    }
  }
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, path + ": " + e.what());
  }
}

}  // namespace komatsu
