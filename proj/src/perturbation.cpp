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

#include "komatsu/perturbation.hpp"

#include <algorithm>
#include <cmath>

#include "komatsu/error.hpp"

namespace komatsu {
namespace {

void require_groups(const CoefficientField& c, const VectorFieldSpec& x, const char* what) {
  if (!(c.group1() == x.x1.group) || !(c.group2() == x.x2.group)) {
    throw Error(ErrorCode::kTruncationMismatch, std::string(what) + " lives on other groups than the operator");
  }
}

/// r1 + r2 alpha with denominators up to 12, or nothing.
std::optional<std::pair<mpq_class, mpq_class>> match_real(double x, std::optional<double> alpha) {
  const double tol = 1e-12 * std::max(1.0, std::abs(x));
  for (long d = 1; d <= 12; ++d) {
    const double p = std::round(x * static_cast<double>(d));
    if (std::abs(x - p / static_cast<double>(d)) <= tol) {
      mpq_class r(static_cast<long>(p), d);
      r.canonicalize();
      return std::make_pair(r, mpq_class(0));
    }
  }
  if (alpha && *alpha != 0.0) {
    for (long d = 1; d <= 12; ++d) {
      const double p = std::round(x / *alpha * static_cast<double>(d));
      if (p != 0.0 && std::abs(x - p / static_cast<double>(d) * *alpha) <= tol) {
        mpq_class r(static_cast<long>(p), d);
        r.canonicalize();
        return std::make_pair(mpq_class(0), r);
      }
    }
  }
  return std::nullopt;
}

/// Largest coefficient on the outermost classes of each nontrivial factor.
std::pair<double, double> outer_shells(const CoefficientField& c) {
  double o1 = 0.0, o2 = 0.0;
  for (const auto& [key, blk] : c.blocks()) {
    double m = 0.0;
    for (const cplx& v : blk.a) m = std::max(m, std::abs(v));
    if (c.group1().kind != GroupKind::kTrivial && class_cut(key.first) == c.band().cut1) o1 = std::max(o1, m);
    if (c.group2().kind != GroupKind::kTrivial && class_cut(key.second) == c.band().cut2) o2 = std::max(o2, m);
  }
  return {o1, o2};
}

double max_difference(const CoefficientField& a, const CoefficientField& b) {
  double out = 0.0;
  for (const auto& [key, blk] : a.blocks()) {
    const Block& other = b.block(key.first, key.second);
    for (std::size_t i = 0; i < blk.a.size(); ++i) out = std::max(out, std::abs(blk.a[i] - other.a[i]));
  }
  return out;
}

}  // namespace

RepIndex identity_class(const GroupTag& g) {
  switch (g.kind) {
    case GroupKind::kTorus: return RepIndex::torus(std::vector<std::int64_t>(static_cast<std::size_t>(g.dim), 0));
    case GroupKind::kSU2: return RepIndex::su2(0);
    case GroupKind::kTrivial: break;
  }
  return RepIndex::trivial();
}

Truncation effective_band(const CoefficientField& c) {
  Truncation t;
  for (const auto& [key, blk] : c.blocks()) {
    const bool nonzero = std::any_of(blk.a.begin(), blk.a.end(), [](const cplx& v) { return v != 0.0; });
    if (!nonzero) continue;
    t.cut1 = std::max(t.cut1, class_cut(key.first));
    t.cut2 = std::max(t.cut2, class_cut(key.second));
  }
  return t;
}

PerturbationProblem reduce(const CoefficientField& q, const VectorFieldSpec& x,
                           std::optional<ExactScalar> q0_hint, int precision_bits) {
  require_groups(q, x, "the potential");
  x.validate();
  PerturbationProblem prob;
  prob.base = x;
  prob.base.q = ExactScalar::rational(0);
  prob.q = q;
  const RepIndex id1 = identity_class(q.group1()), id2 = identity_class(q.group2());
  prob.q0 = q.block(id1, id2).at(1, 1);

  const std::optional<double> alpha = x.alpha ? std::optional<double>(x.alpha_double()) : std::nullopt;
  prob.shifted = prob.base;
  if (q0_hint) {
    const double scale = std::max(1.0, std::abs(prob.q0));
    if (std::abs(cplx(q0_hint->re(alpha.value_or(0.0)), q0_hint->im(alpha.value_or(0.0))) - prob.q0) >
        1e-10 * scale) {
      throw Error(ErrorCode::kInvalidInput, "declared mean " + q0_hint->to_string() +
                                                " differs from the trivial coefficient of q");
    }
    prob.shifted.q = *q0_hint;
    prob.q0_exact = q0_hint->exact;
  } else {
    auto re = match_real(prob.q0.real(), alpha);
    auto im = match_real(prob.q0.imag(), alpha);
    if (re && im) {
      ExactScalar s;
      s.re0 = re->first;
      s.re_alpha = re->second;
      s.im0 = im->first;
      s.im_alpha = im->second;
      prob.shifted.q = s;
      prob.q0_exact = true;
    } else {
      prob.shifted.q = ExactScalar::inexact(prob.q0.real(), prob.q0.imag());
      prob.note = "mean not recognised as an exact value; kernel decisions of the shifted operator are numeric";
    }
  }

  CoefficientField rest = q;
  rest.block(id1, id2).at(1, 1) = 0.0;
  prob.admissibility = check_admissible(rest, prob.base, precision_bits);
  if (prob.admissibility.admissible) {
    prob.primitive = solve(rest, prob.base, precision_bits);
    prob.primitive_residual = max_difference(apply(prob.base, *prob.primitive, precision_bits), rest);
  } else {
    prob.note = "no primitive in class: q - q0 is nonzero on kernel frequencies of X";
  }
  return prob;
}

CoefficientField exp_field(const CoefficientField& q, const Truncation& band, int order, ExpReport* report) {
  if (order < 0) throw Error(ErrorCode::kInvalidInput, "negative series order");
  const SampleGrid grid = grid_for(q.group1(), q.group2(), band, band);
  std::vector<cplx> vals = synthesize_grid(q, grid);
  double sup = 0.0;
  for (const cplx& v : vals) sup = std::max(sup, std::abs(v));
  int p_order = order;
  if (p_order == 0) {
    // sup^P / P! computed in logs.
    p_order = 1;
    const double log_sup = std::log(std::max(sup, 1e-300));
    while (static_cast<double>(p_order) * log_sup - std::lgamma(p_order + 1.0) >= std::log(1e-12)) {
      if (++p_order > 256) throw Error(ErrorCode::kNonConvergent, "exponential series needs more than 256 terms");
    }
  }
  for (cplx& v : vals) {
    cplx s = 1.0;
    for (int p = p_order; p >= 1; --p) s = 1.0 + s * v / static_cast<double>(p);
    v = s;
  }
  CoefficientField out = analyze_grid(vals, grid, q.group1(), q.group2(), band);
  if (report) {
    report->order = p_order;
    report->sup_norm = sup;
    report->series_tail =
        std::exp((p_order + 1.0) * std::log(std::max(sup, 1e-300)) - std::lgamma(p_order + 2.0) + sup);
    auto [o1, o2] = outer_shells(out);
    report->outer_shell = std::max(o1, o2);
    report->band = band;
  }
  return out;
}

CoefficientField exp_field_auto(const CoefficientField& q, ExpReport* report) {
  const Truncation eff = effective_band(q);
  const bool t1 = q.group1().kind != GroupKind::kTrivial, t2 = q.group2().kind != GroupKind::kTrivial;
  Truncation band{t1 ? std::max<std::int64_t>(1, 4 * eff.cut1) : 0, t2 ? std::max<std::int64_t>(1, 4 * eff.cut2) : 0};
  const CoefficientField qe = q.rebanded(eff);
  for (;;) {
    ExpReport rep;
    CoefficientField e;
    try {
      e = exp_field(qe, band, 0, &rep);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::kBandOverflow) {
        throw Error(ErrorCode::kNonConvergent, "exponential not resolved before the grid limit");
      }
      throw;
    }
    auto [o1, o2] = outer_shells(e);
    const double tol = 1e-15 * e.max_abs();
    if (o1 <= tol && o2 <= tol) {
      if (report) *report = rep;
      return e;
    }
    if (o1 > tol) band.cut1 *= 2;
    if (o2 > tol) band.cut2 *= 2;
  }
}

double conjugation_residual(const PerturbationProblem& prob, const CoefficientField& v) {
  return ConjugationCheck(prob, v.band()).residual(v);
}

ConjugationCheck::ConjugationCheck(const PerturbationProblem& prob, const Truncation& v_band)
    : prob_(&prob), v_band_(v_band) {
  if (!prob.primitive) throw Error(ErrorCode::kInadmissible, "no primitive available: " + prob.note);
  CoefficientField neg_q = *prob.primitive;
  neg_q *= -1.0;
  const CoefficientField e_minus = exp_field_auto(neg_q, &exp_report_);
  const CoefficientField q_eff = prob.q.rebanded(effective_band(prob.q));
  w_band_ = {e_minus.band().cut1 + v_band.cut1, e_minus.band().cut2 + v_band.cut2};
  out_band_ = {w_band_.cut1 + q_eff.band().cut1, w_band_.cut2 + q_eff.band().cut2};
  grid_ = grid_for(prob.base.x1.group, prob.base.x2.group, out_band_, out_band_);
  e_minus_ = synthesize_grid(e_minus, grid_);
  q_ = synthesize_grid(q_eff, grid_);
}

double ConjugationCheck::residual(const CoefficientField& v) const {
  require_groups(v, prob_->base, "the test field");
  const Truncation vb = effective_band(v);
  if (vb.cut1 > v_band_.cut1 || vb.cut2 > v_band_.cut2) {
    throw Error(ErrorCode::kTruncationMismatch, "test field exceeds the band of the check");
  }
  const GroupTag& g1 = prob_->base.x1.group;
  const GroupTag& g2 = prob_->base.x2.group;
  // Every product below has band at most out_band_, so sampling is exact.
  std::vector<cplx> w_vals = synthesize_grid(v, grid_);
  CoefficientField shifted_v = apply(prob_->base, v);
  shifted_v += prob_->q0 * v;
  std::vector<cplx> rhs_vals = synthesize_grid(shifted_v, grid_);
  for (std::size_t i = 0; i < w_vals.size(); ++i) {
    w_vals[i] *= e_minus_[i];
    rhs_vals[i] *= e_minus_[i];
  }
  // L_q(e^{-Q} v) - e^{-Q} L_{q0} v = (q w - e^{-Q} L_{q0} v) + X w, w = e^{-Q} v
  const CoefficientField w = analyze_grid(w_vals, grid_, g1, g2, w_band_);
  for (std::size_t i = 0; i < w_vals.size(); ++i) w_vals[i] = q_[i] * w_vals[i] - rhs_vals[i];
  CoefficientField diff = analyze_grid(w_vals, grid_, g1, g2, out_band_);
  diff += apply(prob_->base, w).rebanded(out_band_);
  return diff.max_abs();
}

EnvelopeReport exp_derivative_bound_check(const std::function<double(double)>& f,
                                          const WeightSequence& seq, double h, int max_order,
                                          double k_limit, int samples) {
  if (max_order < 0 || max_order > 10) throw Error(ErrorCode::kInvalidInput, "derivative order must lie in 0..10");
  if (h <= 0.0) throw Error(ErrorCode::kInvalidInput, "h must be positive");
  if (samples < 64) throw Error(ErrorCode::kInvalidInput, "at least 64 samples required");
  const double two_pi = 2.0 * std::acos(-1.0);
  const auto n = static_cast<std::size_t>(samples);
  std::vector<double> t(n), g(n);
  for (std::size_t j = 0; j < n; ++j) {
    t[j] = two_pi * static_cast<double>(j) / static_cast<double>(n);
    g[j] = std::exp(f(t[j]));
  }
  const std::int64_t kmax = std::min<std::int64_t>(256, samples / 2 - 1);
  std::vector<cplx> c(static_cast<std::size_t>(2 * kmax + 1));
  double cmax = 0.0;
  for (std::int64_t k = -kmax; k <= kmax; ++k) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += g[j] * std::polar(1.0, -static_cast<double>(k) * t[j]);
    s /= static_cast<double>(n);
    c[static_cast<std::size_t>(k + kmax)] = s;
    cmax = std::max(cmax, std::abs(s));
  }
  // Coefficients at roundoff level would be amplified by k^p; keep the
  // resolved part only.
  std::int64_t band = 0;
  for (std::int64_t k = -kmax; k <= kmax; ++k) {
    if (std::abs(c[static_cast<std::size_t>(k + kmax)]) > 1e-15 * cmax) band = std::max(band, k < 0 ? -k : k);
  }
  EnvelopeReport rep;
  rep.h = h;
  rep.k_limit = k_limit;
  rep.spectral_band = band;
  for (int p = 0; p <= max_order; ++p) {
    double sup = 0.0, arg = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::int64_t k = -band; k <= band; ++k) {
        const cplx ik(0.0, static_cast<double>(k));
        s += c[static_cast<std::size_t>(k + kmax)] * std::pow(ik, p) * std::polar(1.0, static_cast<double>(k) * t[j]);
      }
      if (std::abs(s) > sup) {
        sup = std::abs(s);
        arg = t[j];
      }
    }
    const double envelope = std::exp(static_cast<double>(p) * std::log(2.0 * h) + seq.log_m(p));
    const double k_needed = sup / envelope;
    rep.sup_derivative.push_back(sup);
    rep.k_needed.push_back(k_needed);
    if (k_needed > rep.k_fit) {
      rep.k_fit = k_needed;
      rep.worst_order = p;
      rep.worst_point = arg;
    }
  }
  rep.holds = rep.k_fit <= k_limit;
  return rep;
}

OperatorAnalysis constant_shift_analyze(const VectorFieldSpec& x, const ExactScalar& q,
                                        const Truncation& trunc, const AssociatedFunction& weights,
                                        FitMode mode, const std::vector<double>& n_grid,
                                        const std::vector<double>& smooth_orders, int precision_bits) {
  VectorFieldSpec spec = x;
  spec.q = q;
  spec.validate();
  return analyze_operator(spec, trunc, weights, mode, n_grid, smooth_orders, precision_bits);
}

}  // namespace komatsu
