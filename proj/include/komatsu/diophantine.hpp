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

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace komatsu {

/// A continued fraction [a0; a1, a2, ...], either a finite digit list (a
/// rational number) or an infinite generator pattern. The value is never
/// stored as a float; callers get convergents or rational enclosures.
class ContinuedFraction {
 public:
  enum class Pattern {
    kFinite,
    kFactorialPow10,  // a_n = 10^{(n+1)!}
    kLiouville,       // lead digits, then a = 10^{scale * j!} for j = 1, 2, ...
    kGolden,          // [1; 1, 1, ...]
    kSqrt2,           // [1; 2, 2, ...]
  };

  static ContinuedFraction finite(std::vector<mpz_class> digits);
  static ContinuedFraction factorial_pow10();
  static ContinuedFraction liouville(std::vector<mpz_class> lead, int scale);
  static ContinuedFraction golden();
  static ContinuedFraction sqrt2();
  /// Pattern names: "factorial-pow10", "golden", "sqrt2", "liouville".
  static ContinuedFraction from_pattern(const std::string& name);

  Pattern pattern() const { return pattern_; }
  bool rational() const { return pattern_ == Pattern::kFinite; }
  std::string describe() const;

  /// Number of usable digits; finite CFs have a fixed length, patterns are
  /// bounded by a digit-size budget.
  int available_digits() const;
  mpz_class digit(int n) const;

  /// p_N/q_N with an error below 2^-bits; exact for finite CFs.
  mpq_class enclosure_center(int bits) const;
  /// Error bound |alpha - enclosure_center(bits)| (0 for finite CFs).
  mpq_class enclosure_radius(int bits) const;
  double to_double() const;

 private:
  int convergent_depth_for(int bits) const;

  Pattern pattern_ = Pattern::kFinite;
  std::vector<mpz_class> digits_;
  int scale_ = 1;
};

/// p_0/q_0 .. p_n/q_n by the standard recurrence. Throws kOutOfRange when a
/// finite CF has fewer than n+1 digits.
std::vector<std::pair<mpz_class, mpz_class>> convergents(const ContinuedFraction& cf, int n);

struct ConvergentRecord {
  int n = 0;
  mpz_class p, q;
  double log_q = 0.0;
  double log_gap = 0.0;     // log |q_n alpha - p_n| from the high-precision value
  double log_gap_lo = 0.0;  // log 1/(q_n (q_n + q_{n+1}))
  double log_gap_hi = 0.0;  // log 1/q_{n+1}
  bool bracket_ok = false;  // value enclosure lies strictly inside the bounds
  double power_exponent = 0.0;  // -log gap / log q_n (0 when q_n = 1)
  double exp_epsilon = 0.0;     // -log gap / q_n^{1/s}
};

struct ApproximationProfile {
  bool rational = false;
  int precision_bits = 512;
  double s = 1.0;
  std::vector<ConvergentRecord> records;
  bool coprime_ok = true;
  bool alternation_ok = true;
  bool gap_decreasing = true;
  std::vector<double> tested_powers;
  double max_power_exponent = 0.0;
  bool liouville_consistent = false;
  /// Trend of -log gap / q^{1/s}: consistent with an order-s exponential
  /// Liouville number only when it does not decay by 10x along the profile.
  bool exp_liouville_consistent = false;
  std::string note;
};

ApproximationProfile approximation_profile(const ContinuedFraction& cf, int n, double s = 1.0,
                                           int bits = 512,
                                           std::vector<double> tested_powers = {2.0, 3.0, 4.0});

/// log of a positive mpz / mpq without overflow.
double log_abs(const mpz_class& z);
double log_abs(const mpq_class& q);

}  // namespace komatsu
