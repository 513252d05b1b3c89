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

// Acceptance suite. One line per criterion: "criterion N: PASS|FAIL ...".
// Every criterion runs under its own wall-clock budget; exceeding it fails.

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "komatsu/diophantine.hpp"
#include "komatsu/error.hpp"
#include "komatsu/operator.hpp"
#include "komatsu/perturbation.hpp"
#include "komatsu/s3_example.hpp"
#include "komatsu/scan.hpp"
#include "komatsu/solver.hpp"
#include "komatsu/spec_io.hpp"
#include "komatsu/transforms.hpp"
#include "komatsu/weights.hpp"

#ifndef KOMATSU_DATA_DIR
#define KOMATSU_DATA_DIR "data"
#endif

namespace {

using namespace komatsu;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string data_path(const std::string& rel) { return std::string(KOMATSU_DATA_DIR) + "/" + rel; }

// Brute force over the first kmax + 1 terms of (k!)^s.
double brute_gevrey_m(double s, double r, int kmax) {
  double best = 0.0;
  const double lr = std::log(r);
  for (int k = 0; k <= kmax; ++k) best = std::max(best, k * lr - s * std::lgamma(k + 1.0));
  return best;
}

Outcome criterion1() {
  double worst_abs = 0.0, ratio_lo = 1e300, ratio_hi = 0.0;
  for (double s : {1.0, 2.0, 3.0}) {
    AssociatedFunction truncated(WeightSequence::gevrey(s, 2000));
    AssociatedFunction full(WeightSequence::gevrey(s));
    for (int i = 0; i < 50; ++i) {
      const double r = std::pow(10.0, 6.0 * i / 49.0);
      worst_abs = std::max(worst_abs, std::abs(associated_value(truncated, r) - brute_gevrey_m(s, r, 2000)));
      if (r >= 1e4) {
        const double ratio = associated_value(full, r) / (s * std::pow(r, 1.0 / s));
        ratio_lo = std::min(ratio_lo, ratio);
        ratio_hi = std::max(ratio_hi, ratio);
      }
    }
  }
  Outcome o;
  o.pass = worst_abs <= 1e-10 && ratio_lo >= 0.8 && ratio_hi <= 1.2;
  o.detail = "max |M - brute| = " + fmt("%.3g", worst_abs) + ", M/(s r^(1/s)) in [" + fmt("%.4f", ratio_lo) +
             ", " + fmt("%.4f", ratio_hi) + "]";
  return o;
}

Outcome criterion2() {
  const char* shipped[] = {"gevrey-1.json", "gevrey-2.json", "gevrey-3.json", "factorial-power-1.5.json"};
  bool finite = true;
  double worst_violation = -std::numeric_limits<double>::infinity();
  int checks = 0;
  for (const char* name : shipped) {
    AssociatedFunction af(parse_sequence(read_json_file(data_path(std::string("sequences/") + name))));
    for (double p : {1.0, 2.0, 5.0})
      for (double q : {0.5, 1.0, 2.0})
        for (double delta : {0.25, 0.5, 1.0}) {
          const auto d = polynomial_domination_constant(af, p, q, delta);
          finite = finite && std::isfinite(d.constant);
          ++checks;
        }
    for (double q : {0.5, 1.0, 2.0, 4.0}) {
      const auto h = halving_inequality_check(af, q);
      worst_violation = std::max(worst_violation, h.max_violation);
    }
  }
  Outcome o;
  o.pass = finite && worst_violation <= 1e-10;
  o.detail = std::to_string(checks) + " domination constants " + (finite ? "finite" : "NOT finite") +
             ", max halving violation " + fmt("%.3g", worst_violation);
  return o;
}

VectorFieldSpec s3_with_shift(const std::string& q) {
  VectorFieldSpec spec = s3_operator();
  spec.q = ExactScalar::parse(q);
  spec.validate();
  return spec;
}

constexpr Truncation kS3Trunc{20000, 200};

Outcome criterion3() {
  const auto none = scan_spectrum(s3_with_shift("1/2 i"), kS3Trunc, {}, 256);
  const auto many = scan_spectrum(s3_with_shift("alpha i"), kS3Trunc, {}, 256);
  Outcome o;
  o.pass = none.census.count == 0 && none.census.ambiguous == 0 && many.census.count >= 200;
  o.detail = "|N| = " + std::to_string(none.census.count) + " for +i/2, " + std::to_string(many.census.count) +
             " for +alpha i (" + (many.census.still_growing ? "still growing" : "saturated") + ")";
  return o;
}

// True when |2m| is a multiple of the largest convergent denominator not
// exceeding it: the resonances of k + alpha m + 1/2 sit there.
bool at_convergent_scale(const ContinuedFraction& cf, std::int64_t two_m) {
  const mpz_class target = two_m < 0 ? -two_m : two_m;
  if (target == 0) return false;
  mpz_class scale = 1;
  for (const auto& pq : convergents(cf, 6)) {
    if (pq.second > target) break;
    scale = pq.second;
  }
  return target % scale == 0;
}

Outcome criterion4() {
  const VectorFieldSpec spec = s3_with_shift("1/2 i");
  const AssociatedFunction af(WeightSequence::gevrey(2.0));
  const auto analysis =
      analyze_operator(spec, kS3Trunc, af, FitMode::kRoumieu, s3_n_grid(), {10.0}, 256, 1e-3);
  const auto& smooth = *analysis.smooth;
  const PerNFit& order10 = smooth.fits.front();
  const double bound = std::log(1e-3) + order10.log_c_initial;
  int located = 0;
  for (const auto& w : smooth.witnesses) {
    const std::int64_t two_m = su2_two_m(w.freq.eta.two_l, w.freq.r);
    if (w.log_value < bound && at_convergent_scale(*spec.alpha, two_m)) ++located;
  }
  bool gevrey_stable = !analysis.komatsu.fits.empty();
  std::string ratios;
  for (const auto& f : analysis.komatsu.fits) {
    gevrey_stable = gevrey_stable && f.stable;
    ratios += " " + fmt("%.3g", std::exp(f.log_c_w100 - f.log_c));
  }
  // Oracle for the smallest divisor: |2k + 1 + alpha 2m| over |2m| <= 2 lmax,
  // with the nearest admissible k (|k| <= kmax).
  const double alpha = spec.alpha->to_double();
  double min_d = std::numeric_limits<double>::infinity(), min_w = 0.0;
  for (std::int64_t two_m = -2 * kS3Trunc.cut2; two_m <= 2 * kS3Trunc.cut2; ++two_m) {
    const double x = alpha * static_cast<double>(two_m);
    const double odd = 2.0 * std::round((-x - 1.0) / 2.0) + 1.0;
    const double k = (odd - 1.0) / 2.0;
    if (std::abs(k) > static_cast<double>(kS3Trunc.cut1)) continue;
    const double d = std::abs(odd + x) / 2.0;
    if (d < min_d) {
      min_d = d;
      min_w = std::sqrt(1.0 + k * k) + std::sqrt(1.0 + std::abs(two_m / 2.0) * (std::abs(two_m / 2.0) + 1.0));
    }
  }
  Outcome o;
  o.pass = located >= 3 && gevrey_stable;
  o.detail = "smooth witnesses at convergent scales: " + std::to_string(located) + " (need 3); smallest |D| " +
             fmt("%.3g", min_d) + " at w " + fmt("%.0f", min_w) + " gives log(|D| w^10) - log C_init = " +
             fmt("%.1f", std::log(min_d) + 10.0 * std::log(min_w) - order10.log_c_initial) +
             " (need < log 1e-3); Gevrey C ratios over two decades:" +
             ratios + (gevrey_stable ? " (stable)" : " (UNSTABLE)");
  return o;
}

struct SolverCase {
  std::string name;
  VectorFieldSpec spec;
  GroupTag g1, g2;
  Truncation band;
};

std::vector<SolverCase> solver_cases() {
  return {
      {"T2 sqrt2", parse_operator(read_json_file(data_path("operators/t2-sqrt2.json"))), GroupTag::torus(1),
       GroupTag::torus(1), {6, 6}},
      {"S3 +i/2", s3_with_shift("1/2 i"), GroupTag::torus(1), GroupTag::su2(), {4, 2}},
      {"T2 a=2", parse_operator(read_json_file(data_path("operators/t2-rational.json"))), GroupTag::torus(1),
       GroupTag::torus(1), {6, 3}},
  };
}

Outcome criterion5() {
  std::mt19937_64 rng(20260501);
  double round_trip = 0.0, linearity = 0.0;
  int fields = 0;
  for (const auto& sc : solver_cases()) {
    for (int i = 0; i < 20; ++i) {
      // Admissible: zero on the kernel frequencies.
      const auto f = project_off_kernel(random_field(sc.g1, sc.g2, sc.band, rng), sc.spec);
      const auto g = project_off_kernel(random_field(sc.g1, sc.g2, sc.band, rng), sc.spec);
      const cplx a(0.7, -1.3), b(-0.4, 0.25);
      const auto uf = solve(f, sc.spec);
      const auto ug = solve(g, sc.spec);
      round_trip = std::max(round_trip, (apply(sc.spec, uf) - f).max_abs() / f.max_abs());
      const auto combined = a * uf + b * ug;
      linearity = std::max(linearity, (solve(a * f + b * g, sc.spec) - combined).max_abs() / combined.max_abs());
      ++fields;
    }
  }
  Outcome o;
  o.pass = round_trip <= 1e-12 && linearity <= 1e-14;
  o.detail = std::to_string(fields) + " fields, max relative round-trip error " + fmt("%.3g", round_trip) +
             ", linearity defect " + fmt("%.3g", linearity);
  return o;
}

Outcome criterion6() {
  const VectorFieldSpec spec = s3_with_shift("1/2 i");
  const WeightSequence seq = WeightSequence::gevrey(2.0);
  const AssociatedFunction af(seq);
  const auto precondition = analyze_operator(spec, {2000, 50}, af, FitMode::kRoumieu, s3_n_grid());
  CoefficientField f(GroupTag::torus(1), GroupTag::su2(), {40, 6});
  for (auto& [key, blk] : f.blocks()) {
    const double w = key.first.weight() + key.second.weight();
    for (auto& x : blk.a) x = std::exp(-associated_value(af, 2.0 * w));
  }
  const auto verdict = classify_decay(solve(f, spec), af);
  const double h = seq.stability_h();
  const double lo = 2.0 / (h * h), hi = 2.0 * h * h;
  Outcome o;
  o.pass = precondition.komatsu.condition_consistent && verdict.roumieu_function && verdict.fitted_n &&
           *verdict.fitted_n >= lo && *verdict.fitted_n <= hi;
  o.detail = std::string("operator ") + (precondition.komatsu.condition_consistent ? "consistent" : "INCONSISTENT") +
             ", solve(f) labelled " + verdict.label + ", fitted N = " +
             (verdict.fitted_n ? fmt("%g", *verdict.fitted_n) : std::string("none")) + " in [" + fmt("%g", lo) +
             ", " + fmt("%g", hi) + "]";
  return o;
}

Outcome criterion7() {
  const auto prob = reduce(s3_potential(cplx(0.0, 0.5)), s3_operator());
  std::mt19937_64 rng(7);
  const Truncation v_band{4, 2};
  const ConjugationCheck check(prob, v_band);
  double residual = 0.0;
  for (int i = 0; i < 10; ++i) {
    residual = std::max(residual, check.residual(random_field(GroupTag::torus(1), GroupTag::su2(), v_band, rng)));
  }

  // d/dpsi of tr on SU2 alone: the factor rule is m on the SU2 factor.
  VectorFieldSpec d_psi;
  d_psi.x1 = {GroupTag::trivial(), 0};
  d_psi.x2 = {GroupTag::su2(), 1};
  d_psi.a = ExactScalar::rational(1);
  const auto trace = analyze([](const ProductPoint& p) { return s3_trace(p.x2); }, GroupTag::trivial(),
                             GroupTag::su2(), {0, 1}, {0, 1});
  const auto derivative = apply(d_psi, trace);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double pointwise = 0.0;
  for (int i = 0; i < 1000; ++i) {
    ProductPoint p;
    p.x2.phi = 2.0 * M_PI * unit(rng);
    p.x2.theta = M_PI * unit(rng);
    p.x2.psi = 4.0 * M_PI * unit(rng);
    const double h = -std::cos(p.x2.theta / 2.0) * std::sin((p.x2.phi + p.x2.psi) / 2.0);
    pointwise = std::max(pointwise, std::abs(synthesize(derivative, p) - h));
  }
  Outcome o;
  o.pass = prob.primitive.has_value() && residual <= 1e-8 && pointwise <= 1e-12;
  o.detail = "q0 = " + (prob.q0_exact ? std::string("exact") : std::string("inexact")) +
             ", max conjugation residual " + fmt("%.3g", residual) + ", max |d_psi tr - h| " + fmt("%.3g", pointwise);
  return o;
}

Outcome criterion8() {
  const auto rep = exp_derivative_bound_check([](double t) { return std::sin(t); }, WeightSequence::gevrey(1.0),
                                              1.0, 10, 10.0);
  Outcome o;
  o.pass = rep.holds && rep.k_fit <= 10.0 && rep.sup_derivative.size() == 11;
  o.detail = "fitted K = " + fmt("%.4g", rep.k_fit) + " (worst order " + std::to_string(rep.worst_order) + ")";
  return o;
}

Outcome criterion9() {
  const std::vector<mpz_class> digits = {10, 100, 1000000};
  const auto conv = convergents(ContinuedFraction::finite(digits), 2);
  // Recurrence oracle: p_n = a_n p_{n-1} + p_{n-2}, seeded with (1, 0), (0, 1).
  mpz_class pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;
  bool match = conv.size() == 3;
  for (std::size_t n = 0; match && n < 3; ++n) {
    const mpz_class p = digits[n] * pm1 + pm2, q = digits[n] * qm1 + qm2;
    match = conv[n].first == p && conv[n].second == q;
    pm2 = pm1, pm1 = p, qm2 = qm1, qm1 = q;
  }
  match = match && conv[2].first == mpz_class("1001000010") && conv[2].second == mpz_class("100000001");

  // The terminating fraction itself: exact rational arithmetic, closed bracket.
  const mpz_class& p1 = conv[1].first;
  const mpz_class& q1 = conv[1].second;
  const mpz_class& q2 = conv[2].second;
  const mpq_class alpha(conv[2].first, q2);
  mpq_class gap = q1 * alpha - p1;
  if (gap < 0) gap = -gap;
  const mpq_class lo(1, q1 * (q1 + q2)), hi(1, q2);
  const bool exact_bracket = gap >= lo && gap <= hi;

  // An irrational continuation of the same digits: certified strict bracket.
  const auto profile = approximation_profile(ContinuedFraction::liouville(digits, 1), 2);
  const bool strict_bracket = profile.records.size() >= 2 && profile.records[1].bracket_ok &&
                              profile.records[1].p == p1 && profile.records[1].q == q1;
  Outcome o;
  o.pass = match && exact_bracket && strict_bracket;
  o.detail = std::string("convergents ") + (match ? "match" : "DIFFER") + ", rational bracket " +
             (exact_bracket ? "holds" : "FAILS") + ", certified bracket of the continuation " +
             (strict_bracket ? "holds" : "FAILS");
  return o;
}

constexpr double kLiouvilleGevrey = 2.0;
constexpr Truncation kLiouvilleTrunc{100, 10000};

Outcome criterion10() {
  const VectorFieldSpec spec = parse_operator(read_json_file(data_path("operators/t2-liouville.json")));
  const AssociatedFunction af(WeightSequence::gevrey(kLiouvilleGevrey));
  const auto analysis = analyze_operator(spec, kLiouvilleTrunc, af, FitMode::kRoumieu, default_n_grid());
  Outcome o;
  if (analysis.komatsu.witnesses.empty()) {
    o.detail = "no Roumieu witnesses in the truncation";
    return o;
  }
  const auto adv = adversarial_field(spec, kLiouvilleTrunc, af, AdversarialMode::kHypoRoumieu, analysis.komatsu);
  double modulus_defect = 0.0;
  for (const auto& w : adv.witnesses) {
    const cplx u = adv.u.block(w.freq.xi, w.freq.eta).at(w.freq.m, 1, w.freq.r, 1);
    modulus_defect = std::max(modulus_defect, std::abs(std::abs(u) - w.w) / w.w);
  }
  std::string f_label = "unclassified", u_label = "unclassified", f_rise = "n/a";
  bool f_function = false, u_rough = false;
  try {
    const auto fv = classify_decay(adv.f, af);
    const auto uv = classify_decay(adv.u, af);
    f_label = fv.label;
    for (const auto& fit : fv.function_fits) {
      if (fit.n == adv.n) f_rise = fmt("%.1f", fit.log_c - fit.log_c_low);
    }
    u_label = uv.label;
    f_function = fv.roumieu_function && fv.lattice_consistent;
    u_rough = uv.finite_order && !uv.smooth && uv.lattice_consistent;
  } catch (const Error& e) {
    f_label = std::string("error: ") + e.what();
  }
  o.pass = f_function && u_rough && modulus_defect <= 1e-12;
  o.detail = std::to_string(adv.witnesses.size()) + " witnesses at N = " + fmt("%g", adv.n) + ", f labelled " +
             f_label + " (residual rise " + f_rise + " at that N, limit log 10)" + ", preimage labelled " + u_label + ", max ||u| - w|/w " + fmt("%.3g", modulus_defect);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, 5, criterion1},   {2, 5, criterion2},  {3, 60, criterion3}, {4, 120, criterion4},
      {5, 10, criterion5},  {6, 10, criterion6}, {7, 30, criterion7}, {8, 5, criterion8},
      {9, 1, criterion9},   {10, 30, criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("criterion %d: %s [%.2fs / %gs%s] %s\n", c.id, pass ? "PASS" : "FAIL", secs, c.budget_s,
                in_time ? "" : " OVER BUDGET", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
