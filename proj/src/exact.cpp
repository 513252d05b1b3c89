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

#include <cmath>
#include <vector>

#include "komatsu/error.hpp"
#include "komatsu/operator.hpp"

namespace komatsu {
namespace {

mpq_class parse_rational(const std::string& s) {
  if (s.empty()) throw Error(ErrorCode::kInvalidInput, "empty number");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpq_class q;
    try {
      q = mpq_class(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::kInvalidInput, "malformed rational '" + s + "'");
    }
    if (q.get_den() == 0) throw Error(ErrorCode::kInvalidInput, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  }
  // Finite decimal: d.ddd[e+-x], converted exactly.
  std::string mant = s;
  long exp10 = 0;
  auto e = s.find_first_of("eE");
  if (e != std::string::npos) {
    mant = s.substr(0, e);
    try {
      exp10 = std::stol(s.substr(e + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidInput, "malformed exponent in '" + s + "'");
    }
  }
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  if (mant == "+" || mant == "-" || mant.empty()) mant += "1";
  mpz_class num;
  if (num.set_str(mant[0] == '+' ? mant.substr(1) : mant, 10) != 0) {
    throw Error(ErrorCode::kInvalidInput, "malformed number '" + s + "'");
  }
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  mpq_class q = exp10 >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
  q.canonicalize();
  return q;
}

}  // namespace

ExactScalar ExactScalar::rational(const mpq_class& re, const mpq_class& im) {
  ExactScalar s;
  s.re0 = re;
  s.im0 = im;
  return s;
}

ExactScalar ExactScalar::alpha_multiple(const mpq_class& re_alpha, const mpq_class& im_alpha) {
  ExactScalar s;
  s.re_alpha = re_alpha;
  s.im_alpha = im_alpha;
  return s;
}

ExactScalar ExactScalar::inexact(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw Error(ErrorCode::kInvalidInput, "non-finite scalar");
  }
  ExactScalar s;
  s.re0 = re;
  s.im0 = im;
  s.exact = false;
  return s;
}

ExactScalar ExactScalar::parse(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (c != ' ' && c != '*') t.push_back(c);
  }
  if (t.empty()) throw Error(ErrorCode::kInvalidInput, "empty number");
  // Split into signed terms; a sign right after an exponent marker stays.
  std::vector<std::string> terms;
  std::size_t start = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      terms.push_back(t.substr(start, i - start));
      start = i;
    }
  }
  terms.push_back(t.substr(start));
  ExactScalar out;
  for (std::string term : terms) {
    const bool imag = !term.empty() && (term.back() == 'i' || term.back() == 'I');
    if (imag) term.pop_back();
    bool alpha = false;
    if (auto pos = term.find("alpha"); pos != std::string::npos) {
      alpha = true;
      term.erase(pos, 5);
    }
    if (term.empty() || term == "+" || term == "-") term += "1";
    const mpq_class v = parse_rational(term[0] == '+' ? term.substr(1) : term);
    (imag ? (alpha ? out.im_alpha : out.im0) : (alpha ? out.re_alpha : out.re0)) += v;
  }
  return out;
}

std::string ExactScalar::to_string() const {
  auto term = [](const mpq_class& c, const char* unit) {
    if (c == 0) return std::string();
    const std::string sign = c > 0 ? "+" : "-";
    if (*unit && abs(c) == 1) return sign + (unit + 1);  // drop "1*"
    return std::string(c > 0 ? "+" : "") + c.get_str() + unit;
  };
  std::string s = term(re0, "") + term(re_alpha, "*alpha") + term(im0, "*i") + term(im_alpha, "*alpha*i");
  if (s.empty()) return "0";
  if (s[0] == '+') s.erase(0, 1);
  return exact ? s : s + " (inexact)";
}

double FactorRule::norm_bound() const {
  return group.kind == GroupKind::kTrivial ? 0.0 : std::abs(coef.get_d());
}

double VectorFieldSpec::alpha_double() const {
  if (!alpha) throw Error(ErrorCode::kInvalidInput, "operator references alpha but none is given");
  return alpha->to_double();
}

void VectorFieldSpec::validate() const {
  if ((a.uses_alpha() || q.uses_alpha()) && !alpha) {
    throw Error(ErrorCode::kInvalidInput, "operator references alpha but none is given");
  }
  for (const FactorRule* f : {&x1, &x2}) {
    if (f->group.kind == GroupKind::kTorus && f->group.dim != 1) {
      throw Error(ErrorCode::kUnknownGroup, "operator factors must be T1, SU2 or trivial");
    }
  }
}

}  // namespace komatsu
