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
#include <vector>

#include "komatsu/diophantine.hpp"
#include "komatsu/duals.hpp"

namespace komatsu {

/// A complex number re0 + re_alpha*alpha + i(im0 + im_alpha*alpha) with
/// rational coefficients over the irrational alpha of the operator spec.
/// Values parsed from floating-point input are marked inexact; exact-zero
/// decisions are never taken on them.
struct ExactScalar {
  mpq_class re0 = 0, re_alpha = 0, im0 = 0, im_alpha = 0;
  bool exact = true;

  static ExactScalar rational(const mpq_class& re, const mpq_class& im = 0);
  static ExactScalar alpha_multiple(const mpq_class& re_alpha, const mpq_class& im_alpha = 0);
  static ExactScalar inexact(double re, double im = 0.0);
  /// Sum of terms "c", "c*alpha", "c*i", "c*alpha*i" with c a rational "p/q",
  /// integer or finite decimal (an empty c means 1), e.g. "1/2 + alpha i".
  static ExactScalar parse(const std::string& text);

  bool uses_alpha() const { return re_alpha != 0 || im_alpha != 0; }
  bool is_zero() const { return re0 == 0 && re_alpha == 0 && im0 == 0 && im_alpha == 0; }
  double re(double alpha) const { return re0.get_d() + re_alpha.get_d() * alpha; }
  double im(double alpha) const { return im0.get_d() + im_alpha.get_d() * alpha; }
  std::string to_string() const;
};

/// Eigenvalue rule of one factor: lambda = coef*k on T1, coef*m on SU2, 0 on
/// the trivial group.
struct FactorRule {
  GroupTag group = GroupTag::torus(1);
  mpq_class coef = 1;
  /// ||X|| with |lambda| <= ||X|| <.> on every class.
  double norm_bound() const;
};

struct VectorFieldSpec {
  FactorRule x1;
  FactorRule x2 = {GroupTag::trivial(), 0};
  ExactScalar a = ExactScalar::rational(0);
  ExactScalar q = ExactScalar::rational(0);
  std::optional<ContinuedFraction> alpha;

  bool exact() const { return a.exact && q.exact; }
  double alpha_double() const;
  /// Throws kInvalidInput if alpha is referenced but absent.
  void validate() const;
};

/// Cutoffs per factor: |k| <= cut on T1, l <= cut on SU2 (half-integers
/// included), ignored on the trivial group.
struct Truncation {
  std::int64_t cut1 = 0, cut2 = 0;
};

/// A distinct eigenvalue of one factor. Torus levels are keyed by k, SU2
/// levels by two_m; the minimal weight is attained at l = |m|.
struct Level {
  std::int64_t key = 0;
  mpq_class eigen;
  double eigen_d = 0.0;
  double min_weight = 1.0;
};

std::vector<Level> factor_levels(const FactorRule& rule, std::int64_t cut);
/// Classes carrying the level, ascending in weight, with the 1-based row of
/// the level inside each class.
std::vector<std::pair<RepIndex, std::int64_t>> level_classes(const GroupTag& group,
                                                             std::int64_t key, std::int64_t cut);
double factor_max_weight(const GroupTag& group, std::int64_t cut);
/// Level of row `row` (1-based) of a class; min_weight is the class weight.
Level level_of(const FactorRule& rule, const RepIndex& rep, std::int64_t row);

struct DivisorValue {
  double re = 0.0, im = 0.0;
  double abs = 0.0;
  double log_abs = 0.0;
  bool exact_zero = false;
  bool ambiguous = false;  // inexact inputs and |D| below 1e-13
  bool refined = false;    // recomputed at high precision
};

/// D = lambda + a*mu - i*q. Values whose double estimate is not clearly
/// away from 0 are decided exactly over Q(alpha), then recomputed with
/// `precision_bits` of working precision.
class DivisorEvaluator {
 public:
  explicit DivisorEvaluator(const VectorFieldSpec& spec, int precision_bits = 256);

  DivisorValue eval(const Level& l1, const Level& l2) const;
  /// Like eval, but every nonzero value of an exact spec is recomputed at
  /// full precision.
  DivisorValue eval_refined(const Level& l1, const Level& l2) const;
  int precision_bits() const { return bits_; }

 private:
  bool exact_zero(const mpq_class& lambda, const mpq_class& mu) const;
  DivisorValue refine(const mpq_class& lambda, const mpq_class& mu) const;

  const VectorFieldSpec* spec_;
  int bits_;
  bool alpha_rational_ = false;
  mpq_class alpha_q_;  // exact value when alpha is rational
  mpf_class alpha_f_;
  double alpha_d_ = 0.0;
  double a_re_ = 0.0, a_im_ = 0.0, shift_re_ = 0.0, shift_im_ = 0.0;
  double a_abs_ = 0.0, shift_abs_ = 0.0;
};

struct DivisorRecord {
  ProductFrequency freq;
  DivisorValue d;
  double w = 0.0;  // <xi> + <eta>
};

/// One record per (xi, eta, m, r) in the truncated product dual, ordered by
/// xi, eta (enumeration order), then m, r.
std::vector<DivisorRecord> divisor_spectrum(const VectorFieldSpec& spec, const Truncation& trunc,
                                            int precision_bits = 256);

struct KernelCensus {
  std::vector<ProductFrequency> elements;  // pairs of classes with a zero row
  std::size_t count = 0;
  std::size_t ambiguous = 0;
  bool still_growing = false;  // an element lies in the outer 20% of either cutoff
  double w1_cut = 0.0, w2_cut = 0.0;
};

KernelCensus kernel_set(const std::vector<DivisorRecord>& spectrum, double w1_cut, double w2_cut);
KernelCensus kernel_set(const std::vector<DivisorRecord>& spectrum, const VectorFieldSpec& spec,
                        const Truncation& trunc);

}  // namespace komatsu
