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

#include "komatsu/diophantine.hpp"

#include <algorithm>
#include <cmath>

#include "komatsu/error.hpp"

namespace komatsu {
namespace {

constexpr double kMaxDigitDecimals = 2.0e6;

mpz_class pow10(unsigned long e) {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), 10, e);
  return z;
}

double factorial_d(int j) {
  double f = 1.0;
  for (int i = 2; i <= j; ++i) f *= i;
  return f;
}

}  // namespace

double log_abs(const mpz_class& z) {
  if (z == 0) return -HUGE_VAL;
  long e = 0;
  double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::abs(m)) + static_cast<double>(e) * std::log(2.0);
}

double log_abs(const mpq_class& q) {
  return log_abs(mpz_class(q.get_num())) - log_abs(mpz_class(q.get_den()));
}

ContinuedFraction ContinuedFraction::finite(std::vector<mpz_class> digits) {
  if (digits.empty()) throw Error(ErrorCode::kInvalidInput, "empty continued fraction");
  for (std::size_t i = 1; i < digits.size(); ++i) {
    if (digits[i] <= 0) throw Error(ErrorCode::kInvalidInput, "partial quotients a_n, n >= 1, must be positive");
  }
  if (digits[0] < 0) throw Error(ErrorCode::kInvalidInput, "a_0 must be nonnegative");
  ContinuedFraction cf;
  cf.pattern_ = Pattern::kFinite;
  cf.digits_ = std::move(digits);
  return cf;
}

ContinuedFraction ContinuedFraction::factorial_pow10() {
  ContinuedFraction cf;
  cf.pattern_ = Pattern::kFactorialPow10;
  return cf;
}

ContinuedFraction ContinuedFraction::liouville(std::vector<mpz_class> lead, int scale) {
  if (lead.empty() || scale < 1) throw Error(ErrorCode::kInvalidInput, "liouville pattern needs lead digits and scale >= 1");
  ContinuedFraction cf = finite(std::move(lead));
  cf.pattern_ = Pattern::kLiouville;
  cf.scale_ = scale;
  return cf;
}

ContinuedFraction ContinuedFraction::golden() {
  ContinuedFraction cf;
  cf.pattern_ = Pattern::kGolden;
  return cf;
}

ContinuedFraction ContinuedFraction::sqrt2() {
  ContinuedFraction cf;
  cf.pattern_ = Pattern::kSqrt2;
  return cf;
}

ContinuedFraction ContinuedFraction::from_pattern(const std::string& name) {
  if (name == "factorial-pow10") return factorial_pow10();
  if (name == "golden") return golden();
  if (name == "sqrt2") return sqrt2();
  if (name == "liouville") return liouville({0, 100}, 20);
  throw Error(ErrorCode::kInvalidInput, "unknown continued-fraction pattern '" + name + "'");
}

std::string ContinuedFraction::describe() const {
  switch (pattern_) {
    case Pattern::kFinite: {
      std::string s = "[";
      for (std::size_t i = 0; i < digits_.size(); ++i) {
        s += (i == 0 ? "" : (i == 1 ? "; " : ", ")) + digits_[i].get_str();
      }
      return s + "]";
    }
    case Pattern::kFactorialPow10: return "[10^{1!}; 10^{2!}, 10^{3!}, ...]";
    case Pattern::kLiouville: {
      std::string s = "[";
      for (std::size_t i = 0; i < digits_.size(); ++i) {
        s += (i == 0 ? "" : (i == 1 ? "; " : ", ")) + digits_[i].get_str();
      }
      return s + ", 10^{" + std::to_string(scale_) + "*j!}, ...]";
    }
    case Pattern::kGolden: return "[1; 1, 1, ...]";
    case Pattern::kSqrt2: return "[1; 2, 2, ...]";
  }
  return "?";
}

int ContinuedFraction::available_digits() const {
  switch (pattern_) {
    case Pattern::kFinite: return static_cast<int>(digits_.size());
    case Pattern::kFactorialPow10: {
      int n = 0;
      while (factorial_d(n + 1) <= kMaxDigitDecimals) ++n;
      return n;
    }
    case Pattern::kLiouville: {
      int j = 1;
      while (scale_ * factorial_d(j) <= kMaxDigitDecimals) ++j;
      return static_cast<int>(digits_.size()) + j - 1;
    }
    case Pattern::kGolden:
    case Pattern::kSqrt2: return 100000;
  }
  return 0;
}

mpz_class ContinuedFraction::digit(int n) const {
  if (n < 0 || n >= available_digits()) {
    throw Error(ErrorCode::kOutOfRange, "partial quotient index " + std::to_string(n) + " unavailable");
  }
  switch (pattern_) {
    case Pattern::kFinite: return digits_[static_cast<std::size_t>(n)];
    case Pattern::kFactorialPow10: return pow10(static_cast<unsigned long>(factorial_d(n + 1)));
    case Pattern::kLiouville: {
      if (n < static_cast<int>(digits_.size())) return digits_[static_cast<std::size_t>(n)];
      int j = n - static_cast<int>(digits_.size()) + 1;
      return pow10(static_cast<unsigned long>(scale_ * factorial_d(j)));
    }
    case Pattern::kGolden: return 1;
    case Pattern::kSqrt2: return n == 0 ? 1 : 2;
  }
  return 0;
}

std::vector<std::pair<mpz_class, mpz_class>> convergents(const ContinuedFraction& cf, int n) {
  if (n < 0) throw Error(ErrorCode::kInvalidInput, "convergent depth must be >= 0");
  std::vector<std::pair<mpz_class, mpz_class>> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  mpz_class p2 = 0, p1 = 1, q2 = 1, q1 = 0;  // p_{-2}, p_{-1}, q_{-2}, q_{-1}
  for (int k = 0; k <= n; ++k) {
    mpz_class a = cf.digit(k);
    mpz_class p = a * p1 + p2;
    mpz_class q = a * q1 + q2;
    out.emplace_back(p, q);
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
  }
  return out;
}

int ContinuedFraction::convergent_depth_for(int bits) const {
  const double need = (bits + 64) * std::log(2.0);
  const int avail = available_digits();
  mpz_class q2 = 1, q1 = 0;
  for (int k = 0; k < avail; ++k) {
    mpz_class q = digit(k) * q1 + q2;
    q2 = q1;
    q1 = q;
    // q2 = q_{k-1}, q1 = q_k; depth N = k - 1 gives error < 1/(q_N q_{N+1}).
    if (k >= 1 && log_abs(q1) + log_abs(q2) > need) return k - 1;
  }
  throw Error(ErrorCode::kInsufficientPrecision,
              "pattern digits exhausted before reaching " + std::to_string(bits) + " bits");
}

mpq_class ContinuedFraction::enclosure_center(int bits) const {
  if (rational()) {
    auto c = convergents(*this, available_digits() - 1).back();
    mpq_class v(c.first, c.second);
    v.canonicalize();
    return v;
  }
  int n = convergent_depth_for(bits);
  auto c = convergents(*this, n).back();
  mpq_class v(c.first, c.second);
  v.canonicalize();
  return v;
}

mpq_class ContinuedFraction::enclosure_radius(int bits) const {
  if (rational()) return 0;
  int n = convergent_depth_for(bits);
  auto c = convergents(*this, n + 1);
  mpq_class r(1, c[static_cast<std::size_t>(n)].second * c[static_cast<std::size_t>(n) + 1].second);
  r.canonicalize();
  return r;
}

double ContinuedFraction::to_double() const { return enclosure_center(80).get_d(); }

ApproximationProfile approximation_profile(const ContinuedFraction& cf, int n, double s,
                                           int bits, std::vector<double> tested_powers) {
  if (n < 2) throw Error(ErrorCode::kInvalidInput, "profile depth must be >= 2");
  if (bits < 512) throw Error(ErrorCode::kInsufficientPrecision, "profile needs >= 512 bits");
  ApproximationProfile prof;
  prof.s = s;
  prof.precision_bits = bits;
  prof.tested_powers = std::move(tested_powers);
  if (cf.rational()) {
    prof.rational = true;
    prof.note = "terminating continued fraction; the number is rational";
    return prof;
  }
  auto conv = convergents(cf, n + 1);
  const auto& qn = conv[static_cast<std::size_t>(n)].second;
  const auto& qn1 = conv[static_cast<std::size_t>(n) + 1].second;
  const int extra = static_cast<int>(std::ceil((2.0 * log_abs(qn) + log_abs(qn1)) / std::log(2.0))) + 4;
  const mpq_class center = cf.enclosure_center(bits + extra);
  const mpq_class radius = cf.enclosure_radius(bits + extra);

  for (int k = 0; k <= n; ++k) {
    const auto& [p, q] = conv[static_cast<std::size_t>(k)];
    const auto& q_next = conv[static_cast<std::size_t>(k) + 1].second;
    ConvergentRecord rec;
    rec.n = k;
    rec.p = p;
    rec.q = q;
    rec.log_q = log_abs(q);
    mpq_class gap = mpq_class(q) * center - mpq_class(p);
    if (gap < 0) gap = -gap;
    mpq_class err = mpq_class(q) * radius;
    mpq_class lo(1, q * (q + q_next));
    lo.canonicalize();
    mpq_class hi(1, q_next);
    hi.canonicalize();
    rec.bracket_ok = (gap - err > lo) && (gap + err < hi);
    rec.log_gap = log_abs(gap);
    rec.log_gap_lo = log_abs(lo);
    rec.log_gap_hi = log_abs(hi);
    rec.power_exponent = q > 1 ? -rec.log_gap / rec.log_q : 0.0;
    rec.exp_epsilon = -rec.log_gap / std::exp(rec.log_q / s);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1) prof.coprime_ok = false;
    mpq_class conv_value(p, q);
    conv_value.canonicalize();
    bool below = conv_value < center - radius;
    bool above = conv_value > center + radius;
    if ((k % 2 == 0 && !below) || (k % 2 == 1 && !above)) prof.alternation_ok = false;
    if (!prof.records.empty() && !(rec.log_gap < prof.records.back().log_gap)) {
      prof.gap_decreasing = false;
    }
    prof.records.push_back(std::move(rec));
  }

  for (const auto& r : prof.records) {
    prof.max_power_exponent = std::max(prof.max_power_exponent, r.power_exponent);
  }
  prof.liouville_consistent = !prof.tested_powers.empty();
  for (double c : prof.tested_powers) {
    bool hit = std::any_of(prof.records.begin(), prof.records.end(), [c](const ConvergentRecord& r) {
      return r.power_exponent > c;
    });
    if (!hit) prof.liouville_consistent = false;
  }

  const ConvergentRecord* first = nullptr;
  for (const auto& r : prof.records) {
    if (r.q > 1) {
      first = &r;
      break;
    }
  }
  if (first != nullptr) {
    prof.exp_liouville_consistent = prof.records.back().exp_epsilon >= first->exp_epsilon / 10.0;
  }
  prof.note =
      "exponential-Liouville verdict tests the shape |q alpha - p| >= exp(-eps q^{1/s}); "
      "the underlying definition is external to this library";
  return prof;
}

}  // namespace komatsu
