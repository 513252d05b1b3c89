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

#include "komatsu/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "komatsu/error.hpp"

namespace komatsu {
namespace {

double su2_weight(std::int64_t two_l) {
  return 0.5 * std::sqrt(4.0 + static_cast<double>(two_l) * static_cast<double>(two_l + 2));
}

double log_abs_complex_q(const mpq_class& re, const mpq_class& im) {
  mpq_class n2 = re * re + im * im;
  if (n2 == 0) return -std::numeric_limits<double>::infinity();
  return 0.5 * log_abs(n2);
}

std::size_t level_slot(const GroupTag& g, std::int64_t key, std::int64_t cut) {
  switch (g.kind) {
    case GroupKind::kTrivial: return 0;
    case GroupKind::kTorus: return static_cast<std::size_t>(key + cut);
    case GroupKind::kSU2: return static_cast<std::size_t>(key + 2 * cut);
  }
  return 0;
}

std::vector<RepIndex> factor_classes(const GroupTag& g, std::int64_t cut) {
  return enumerate_dual(g, factor_max_weight(g, cut));
}

std::int64_t row_key(const RepIndex& rep, std::int64_t row) {
  switch (rep.kind) {
    case GroupKind::kSU2: return su2_two_m(rep.two_l, row);
    case GroupKind::kTorus: return rep.k.at(0);
    case GroupKind::kTrivial: return 0;
  }
  return 0;
}

}  // namespace

std::vector<Level> factor_levels(const FactorRule& rule, std::int64_t cut) {
  if (cut < 0) throw Error(ErrorCode::kInvalidInput, "negative truncation");
  std::vector<Level> out;
  switch (rule.group.kind) {
    case GroupKind::kTrivial:
      out.push_back({0, mpq_class(0), 0.0, 1.0});
      break;
    case GroupKind::kTorus:
      for (std::int64_t k = -cut; k <= cut; ++k) {
        mpq_class e = rule.coef * mpq_class(static_cast<long>(k));
        double kd = static_cast<double>(k);
        out.push_back({k, e, e.get_d(), std::sqrt(1.0 + kd * kd)});
      }
      break;
    case GroupKind::kSU2:
      for (std::int64_t tm = -2 * cut; tm <= 2 * cut; ++tm) {
        mpq_class e = rule.coef * mpq_class(static_cast<long>(tm), 2);
        e.canonicalize();
        out.push_back({tm, e, e.get_d(), su2_weight(tm < 0 ? -tm : tm)});
      }
      break;
  }
  return out;
}

std::vector<std::pair<RepIndex, std::int64_t>> level_classes(const GroupTag& group,
                                                             std::int64_t key, std::int64_t cut) {
  std::vector<std::pair<RepIndex, std::int64_t>> out;
  switch (group.kind) {
    case GroupKind::kTrivial:
      out.emplace_back(RepIndex::trivial(), 1);
      break;
    case GroupKind::kTorus:
      out.emplace_back(RepIndex::torus1(key), 1);
      break;
    case GroupKind::kSU2:
      for (std::int64_t tl = key < 0 ? -key : key; tl <= 2 * cut; tl += 2) {
        out.emplace_back(RepIndex::su2(tl), su2_row(tl, key));
      }
      break;
  }
  return out;
}

double factor_max_weight(const GroupTag& group, std::int64_t cut) {
  switch (group.kind) {
    case GroupKind::kTrivial: return 1.0;
    case GroupKind::kTorus: return std::sqrt(1.0 + static_cast<double>(cut) * static_cast<double>(cut));
    case GroupKind::kSU2: return su2_weight(2 * cut);
  }
  return 1.0;
}

Level level_of(const FactorRule& rule, const RepIndex& rep, std::int64_t row) {
  if (rep.kind != rule.group.kind) throw Error(ErrorCode::kTruncationMismatch, "class from another group");
  if (row < 1 || row > rep.dim()) throw Error(ErrorCode::kOutOfRange, "row outside the class");
  const std::int64_t key = row_key(rep, row);
  mpq_class e = 0;
  if (rep.kind == GroupKind::kTorus) e = rule.coef * mpq_class(static_cast<long>(key));
  if (rep.kind == GroupKind::kSU2) e = rule.coef * mpq_class(static_cast<long>(key), 2);
  e.canonicalize();
  return {key, e, e.get_d(), rep.weight()};
}

DivisorEvaluator::DivisorEvaluator(const VectorFieldSpec& spec, int precision_bits)
    : spec_(&spec), bits_(precision_bits), alpha_f_(0, static_cast<mp_bitcnt_t>(precision_bits + 64)) {
  spec.validate();
  if (precision_bits < 53) {
    throw Error(ErrorCode::kInsufficientPrecision, "divisor precision below double");
  }
  if (spec.alpha) {
    alpha_rational_ = spec.alpha->rational();
    mpq_class c = spec.alpha->enclosure_center(precision_bits + 64);
    alpha_q_ = c;
    alpha_f_ = mpf_class(c, static_cast<mp_bitcnt_t>(precision_bits + 64));
    alpha_d_ = c.get_d();
  }
  a_re_ = spec.a.re(alpha_d_);
  a_im_ = spec.a.im(alpha_d_);
  shift_re_ = spec.q.im(alpha_d_);
  shift_im_ = -spec.q.re(alpha_d_);
  a_abs_ = std::hypot(a_re_, a_im_);
  shift_abs_ = std::hypot(shift_re_, shift_im_);
}

bool DivisorEvaluator::exact_zero(const mpq_class& lambda, const mpq_class& mu) const {
  const ExactScalar& a = spec_->a;
  const ExactScalar& q = spec_->q;
  if (!spec_->alpha || alpha_rational_) {
    mpq_class al = spec_->alpha ? alpha_q_ : mpq_class(0);
    mpq_class re = lambda + (a.re0 + a.re_alpha * al) * mu + q.im0 + q.im_alpha * al;
    mpq_class im = (a.im0 + a.im_alpha * al) * mu - q.re0 - q.re_alpha * al;
    return re == 0 && im == 0;
  }
  // alpha irrational: 1 and alpha are linearly independent over Q.
  return lambda + a.re0 * mu + q.im0 == 0 && a.re_alpha * mu + q.im_alpha == 0 &&
         a.im0 * mu - q.re0 == 0 && a.im_alpha * mu - q.re_alpha == 0;
}

DivisorValue DivisorEvaluator::refine(const mpq_class& lambda, const mpq_class& mu) const {
  const ExactScalar& a = spec_->a;
  const ExactScalar& q = spec_->q;
  DivisorValue v;
  v.refined = true;
  if (!spec_->alpha || alpha_rational_) {
    mpq_class al = spec_->alpha ? alpha_q_ : mpq_class(0);
    mpq_class re = lambda + (a.re0 + a.re_alpha * al) * mu + q.im0 + q.im_alpha * al;
    mpq_class im = (a.im0 + a.im_alpha * al) * mu - q.re0 - q.re_alpha * al;
    v.re = re.get_d();
    v.im = im.get_d();
    v.log_abs = log_abs_complex_q(re, im);
    v.abs = std::exp(v.log_abs);
    return v;
  }
  const auto prec = static_cast<mp_bitcnt_t>(bits_ + 64);
  mpf_class lf(lambda, prec), mf(mu, prec);
  mpf_class re(0, prec), im(0, prec);
  re = lf + (mpf_class(a.re0, prec) + mpf_class(a.re_alpha, prec) * alpha_f_) * mf +
       mpf_class(q.im0, prec) + mpf_class(q.im_alpha, prec) * alpha_f_;
  im = (mpf_class(a.im0, prec) + mpf_class(a.im_alpha, prec) * alpha_f_) * mf -
       mpf_class(q.re0, prec) - mpf_class(q.re_alpha, prec) * alpha_f_;
  mpf_class n2(re * re + im * im, prec);
  if (n2 == 0) {
    throw Error(ErrorCode::kInsufficientPrecision, "nonzero divisor vanished at working precision");
  }
  long e = 0;
  double m = mpf_get_d_2exp(&e, n2.get_mpf_t());
  v.log_abs = 0.5 * (std::log(m) + static_cast<double>(e) * std::log(2.0));
  v.re = re.get_d();
  v.im = im.get_d();
  v.abs = std::exp(v.log_abs);
  return v;
}

DivisorValue DivisorEvaluator::eval(const Level& l1, const Level& l2) const {
  DivisorValue v;
  const double mu = l2.eigen_d;
  v.re = l1.eigen_d + a_re_ * mu + shift_re_;
  v.im = a_im_ * mu + shift_im_;
  v.abs = std::hypot(v.re, v.im);
  const double scale = std::abs(l1.eigen_d) + a_abs_ * std::abs(mu) + shift_abs_ + 1.0;
  const double bound = 16.0 * std::numeric_limits<double>::epsilon() * scale;
  if (!spec_->exact()) {
    if (v.abs < 1e-13) v.ambiguous = true;
    v.log_abs = std::log(v.abs);
    return v;
  }
  if (v.abs < 1e6 * bound) {
    if (exact_zero(l1.eigen, l2.eigen)) {
      v = DivisorValue{};
      v.exact_zero = true;
      v.log_abs = -std::numeric_limits<double>::infinity();
      return v;
    }
    return refine(l1.eigen, l2.eigen);
  }
  v.log_abs = std::log(v.abs);
  return v;
}

DivisorValue DivisorEvaluator::eval_refined(const Level& l1, const Level& l2) const {
  DivisorValue v = eval(l1, l2);
  if (!spec_->exact() || v.exact_zero || v.refined) return v;
  return refine(l1.eigen, l2.eigen);
}

std::vector<DivisorRecord> divisor_spectrum(const VectorFieldSpec& spec, const Truncation& trunc,
                                            int precision_bits) {
  if (trunc.cut1 < 0 || trunc.cut2 < 0) throw Error(ErrorCode::kInvalidInput, "negative truncation");
  DivisorEvaluator ev(spec, precision_bits);
  const auto lv1 = factor_levels(spec.x1, trunc.cut1);
  const auto lv2 = factor_levels(spec.x2, trunc.cut2);
  const auto c1 = factor_classes(spec.x1.group, trunc.cut1);
  const auto c2 = factor_classes(spec.x2.group, trunc.cut2);
  const double n1 = spec.x1.norm_bound(), n2 = spec.x2.norm_bound();
  std::vector<DivisorRecord> out;
  for (const auto& xi : c1) {
    for (const auto& eta : c2) {
      const double w = xi.weight() + eta.weight();
      for (std::int64_t m = 1; m <= xi.dim(); ++m) {
        const Level& a = lv1[level_slot(spec.x1.group, row_key(xi, m), trunc.cut1)];
        if (std::abs(a.eigen_d) > n1 * xi.weight() * (1.0 + 1e-12)) {
          throw Error(ErrorCode::kInvalidInput, "symbol bound violated on the first factor");
        }
        for (std::int64_t r = 1; r <= eta.dim(); ++r) {
          const Level& b = lv2[level_slot(spec.x2.group, row_key(eta, r), trunc.cut2)];
          if (std::abs(b.eigen_d) > n2 * eta.weight() * (1.0 + 1e-12)) {
            throw Error(ErrorCode::kInvalidInput, "symbol bound violated on the second factor");
          }
          out.push_back({ProductFrequency{xi, eta, m, r}, ev.eval(a, b), w});
        }
      }
    }
  }
  return out;
}

KernelCensus kernel_set(const std::vector<DivisorRecord>& spectrum, double w1_cut, double w2_cut) {
  KernelCensus census;
  census.w1_cut = w1_cut;
  census.w2_cut = w2_cut;
  std::set<std::pair<RepIndex, RepIndex>> seen;
  for (const auto& rec : spectrum) {
    if (rec.d.ambiguous) ++census.ambiguous;
    if (!rec.d.exact_zero) continue;
    if (!seen.insert({rec.freq.xi, rec.freq.eta}).second) continue;
    census.elements.push_back(rec.freq);
    if ((w1_cut > 1.0 && rec.freq.xi.weight() >= 0.8 * w1_cut) ||
        (w2_cut > 1.0 && rec.freq.eta.weight() >= 0.8 * w2_cut)) {
      census.still_growing = true;
    }
  }
  census.count = census.elements.size();
  return census;
}

KernelCensus kernel_set(const std::vector<DivisorRecord>& spectrum, const VectorFieldSpec& spec,
                        const Truncation& trunc) {
  return kernel_set(spectrum, factor_max_weight(spec.x1.group, trunc.cut1),
                    factor_max_weight(spec.x2.group, trunc.cut2));
}

}  // namespace komatsu
