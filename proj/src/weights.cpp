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

#include "komatsu/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "komatsu/error.hpp"

namespace komatsu {
namespace {

constexpr double kLogTol = 1e-9;

double tol_for(double x) { return kLogTol * std::max(1.0, std::abs(x)); }

// Constraint lhs_i <= log A + e_i log H, listed with e_i nondecreasing.
struct StabilityConstraint {
  double exponent;
  double lhs;
  std::int64_t k;
};

struct RequiredA {
  double log_a;
  std::size_t argmax;
};

RequiredA required_log_a(const std::vector<StabilityConstraint>& cs, double log_h) {
  RequiredA out{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < cs.size(); ++i) {
    double v = cs[i].lhs - cs[i].exponent * log_h;
    if (v > out.log_a + tol_for(v)) out = {v, i};
  }
  return out;
}

// A pair is accepted when the binding constraint lies in the lower half of
// the table; a binding constraint near the cutoff means A would keep growing.
bool stabilized(const RequiredA& r, std::size_t n) { return 2 * r.argmax <= n; }

struct StabilityFit {
  bool feasible = false;
  double a = 0.0, h = 0.0;
  double log_a = 0.0;  // unclamped
  std::int64_t witness = 0;
};

StabilityFit fit_stability(const std::vector<StabilityConstraint>& cs,
                           double h_lo = 1.0 / 16.0, double h_hi = 1e6) {
  StabilityFit fit;
  if (cs.empty()) {
    fit.feasible = true;
    fit.a = 1.0;
    fit.h = 1.0;
    return fit;
  }
  const double step = std::log(1.25);
  const double lo = std::log(h_lo);
  const double hi = std::log(h_hi);
  double prev = lo;
  bool found = false;
  double log_h = lo;
  for (double x = lo; x <= hi + 1e-12; x += step) {
    if (stabilized(required_log_a(cs, x), cs.size())) {
      log_h = x;
      found = true;
      break;
    }
    prev = x;
  }
  if (!found) {
    auto r = required_log_a(cs, hi);
    fit.witness = cs[r.argmax].k;
    return fit;
  }
  if (log_h > lo) {
    double a = prev, b = log_h;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (a + b);
      if (stabilized(required_log_a(cs, mid), cs.size())) b = mid; else a = mid;
    }
    log_h = b;
  }
  fit.feasible = true;
  fit.h = std::exp(log_h);
  fit.log_a = required_log_a(cs, log_h).log_a;
  fit.a = std::max(1.0, std::exp(fit.log_a));
  return fit;
}

}  // namespace

WeightSequence WeightSequence::gevrey(double s, std::int64_t kmax) {
  if (!(s >= 1.0) || !std::isfinite(s)) {
    throw Error(ErrorCode::kInvalidSequence, "Gevrey order must satisfy s >= 1");
  }
  if (kmax < 64) throw Error(ErrorCode::kInvalidSequence, "Kmax must be at least 64");
  WeightSequence w;
  w.kind_ = WeightKind::kGevrey;
  w.s_ = s;
  w.kmax_ = kmax;
  w.a_ = 1.0;
  w.h_ = std::pow(2.0, s);
  w.log_convex_ = true;
  return w;
}

WeightSequence WeightSequence::factorial_power_table(double s, std::int64_t kmax) {
  if (!(s >= 1.0) || !std::isfinite(s)) {
    throw Error(ErrorCode::kInvalidSequence, "factorial power must satisfy s >= 1");
  }
  if (kmax < 64) throw Error(ErrorCode::kInvalidSequence, "Kmax must be at least 64");
  WeightSequence w;
  w.kind_ = WeightKind::kFactorialPowerTable;
  w.s_ = s;
  w.kmax_ = kmax;
  w.log_m_.resize(static_cast<std::size_t>(kmax) + 1);
  double acc = 0.0;
  w.log_m_[0] = 0.0;
  for (std::int64_t k = 1; k <= kmax; ++k) {
    acc += std::log(static_cast<double>(k));
    w.log_m_[static_cast<std::size_t>(k)] = s * acc;
  }
  w.log_convex_ = true;
  w.a_ = 1.0;
  w.h_ = std::pow(2.0, s);
  return w;
}

WeightSequence WeightSequence::from_log_table(std::vector<double> log_m) {
  if (log_m.size() < 8) {
    throw Error(ErrorCode::kInvalidSequence, "at least 8 tabulated values are required");
  }
  for (double v : log_m) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidSequence, "non-finite log M_k");
  }
  WeightSequence w;
  w.kind_ = WeightKind::kUserTable;
  w.s_ = 0.0;
  w.kmax_ = static_cast<std::int64_t>(log_m.size()) - 1;
  w.log_m_ = std::move(log_m);
  w.finish_table();
  return w;
}

WeightSequence WeightSequence::from_values(std::span<const double> m) {
  std::vector<double> logs;
  logs.reserve(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (!(m[k] > 0.0) || !std::isfinite(m[k])) {
      throw Error(ErrorCode::kInvalidSequence,
                  "M_" + std::to_string(k) + " is not a positive finite number");
    }
    logs.push_back(std::log(m[k]));
  }
  return from_log_table(std::move(logs));
}

void WeightSequence::finish_table() {
  log_convex_ = true;
  for (std::int64_t k = 1; k < kmax_; ++k) {
    double lhs = 2.0 * log_m(k);
    double rhs = log_m(k - 1) + log_m(k + 1);
    if (lhs > rhs + tol_for(lhs)) {
      log_convex_ = false;
      break;
    }
  }
  std::vector<StabilityConstraint> cs;
  for (std::int64_t k = 0; k < kmax_; ++k) {
    cs.push_back({static_cast<double>(k), log_m(k + 1) - log_m(k), k});
  }
  for (std::int64_t k = 0; 2 * k <= kmax_; ++k) {
    cs.push_back({2.0 * static_cast<double>(k), log_m(2 * k) - 2.0 * log_m(k), k});
  }
  std::stable_sort(cs.begin(), cs.end(), [](const auto& x, const auto& y) {
    return x.exponent < y.exponent;
  });
  StabilityFit fit = fit_stability(cs);
  a_ = fit.feasible ? fit.a : std::numeric_limits<double>::infinity();
  h_ = fit.feasible ? fit.h : std::numeric_limits<double>::infinity();
}

std::string WeightSequence::kind_name() const {
  switch (kind_) {
    case WeightKind::kGevrey: return "gevrey";
    case WeightKind::kFactorialPowerTable: return "factorial-power";
    case WeightKind::kUserTable: return "table";
  }
  return "unknown";
}

double WeightSequence::log_m(std::int64_t k) const {
  if (k < 0 || k > kmax_) throw Error(ErrorCode::kOutOfRange, "weight index outside table");
  if (kind_ == WeightKind::kGevrey) return s_ * std::lgamma(static_cast<double>(k) + 1.0);
  return log_m_[static_cast<std::size_t>(k)];
}

double WeightSequence::log_ratio(std::int64_t k) const {
  if (kind_ == WeightKind::kGevrey) return s_ * std::log(static_cast<double>(k) + 1.0);
  return log_m(k + 1) - log_m(k);
}

WeightSequence WeightSequence::truncated(std::int64_t kmax) const {
  if (kmax > kmax_) throw Error(ErrorCode::kOutOfRange, "truncation beyond table cutoff");
  if (kind_ == WeightKind::kGevrey) return gevrey(s_, kmax);
  if (kind_ == WeightKind::kFactorialPowerTable) return factorial_power_table(s_, kmax);
  return from_log_table(std::vector<double>(log_m_.begin(), log_m_.begin() + kmax + 1));
}

AssociatedValue AssociatedFunction::evaluate(double r) const {
  AssociatedValue out;
  if (!(r > 0.0)) return out;
  const double lr = std::log(r);
  const std::int64_t kmax = seq_.kmax();
  std::int64_t k = 0;
  if (seq_.kind() == WeightKind::kGevrey) {
    // First k with s log(k+1) >= log r.
    double x = std::exp(lr / seq_.gevrey_order());
    if (x > static_cast<double>(kmax) + 2.0) {
      k = kmax;
      out.saturated = true;
    } else {
      k = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(x)) - 1);
      while (k > 0 && seq_.log_ratio(k - 1) >= lr) --k;
      while (k < kmax && seq_.log_ratio(k) < lr) ++k;
      out.saturated = (k == kmax && seq_.log_ratio(kmax - 1) < lr);
    }
  } else if (seq_.log_convex()) {
    std::int64_t lo = 0, hi = kmax;  // answer in [lo, hi]
    while (lo < hi) {
      std::int64_t mid = lo + (hi - lo) / 2;
      if (seq_.log_ratio(mid) >= lr) hi = mid; else lo = mid + 1;
    }
    k = lo;
    out.saturated = (k == kmax && seq_.log_ratio(kmax - 1) < lr);
  } else {
    double best = -std::numeric_limits<double>::infinity();
    for (std::int64_t j = 0; j <= kmax; ++j) {
      double v = static_cast<double>(j) * lr - seq_.log_m(j);
      if (v > best) {
        best = v;
        k = j;
      }
    }
    out.saturated = (k == kmax);
  }
  out.argmax = k;
  out.value = std::max(0.0, static_cast<double>(k) * lr - seq_.log_m(k));
  return out;
}

double associated_value(const AssociatedFunction& af, double r) { return af(r); }

double neg_exp_associated(const AssociatedFunction& af, double r) {
  return std::exp(-af(r));
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g;
  if (points <= 1) return {lo};
  g.reserve(static_cast<std::size_t>(points));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < points; ++i) g.push_back(std::exp(a + (b - a) * i / (points - 1)));
  g.back() = hi;
  return g;
}

DominationResult polynomial_domination_constant(const AssociatedFunction& af, double p,
                                                double q, double delta, int points) {
  if (!(q > 0.0) || !(delta > 0.0) || p < 0.0) {
    throw Error(ErrorCode::kInvalidInput, "domination constant needs p >= 0, q > 0, delta > 0");
  }
  points = std::max(points, 400);
  DominationResult res;
  res.grid_points = points;
  res.log_constant = -std::numeric_limits<double>::infinity();
  for (double r : log_grid(res.grid_lo, res.grid_hi, points)) {
    double v = p * std::log(r) - delta * af(q * r);
    if (v > res.log_constant) {
      res.log_constant = v;
      res.argmax_r = r;
    }
  }
  res.constant = std::exp(res.log_constant);
  return res;
}

HalvingReport halving_inequality_check(const AssociatedFunction& af, double q, int points) {
  if (!(q > 0.0)) throw Error(ErrorCode::kInvalidInput, "halving check needs q > 0");
  const auto& seq = af.sequence();
  HalvingReport rep;
  rep.q = q;
  rep.h = seq.stability_h();
  rep.a = seq.stability_a();
  if (!std::isfinite(rep.h) || !std::isfinite(rep.a)) {
    throw Error(ErrorCode::kInvalidSequence, "sequence has no stability constants");
  }
  points = std::max(points, 400);
  std::vector<double> grid{0.0};
  for (double r : log_grid(1.0, 1e8, points)) grid.push_back(r);
  rep.max_violation = -std::numeric_limits<double>::infinity();
  const double half_log_a = 0.5 * std::log(rep.a);
  for (double r : grid) {
    AssociatedValue big = af.evaluate(q * r);
    AssociatedValue small = af.evaluate(q * r / rep.h);
    // A saturated sup is a table artefact, not a value of M.
    if (big.saturated || small.saturated) {
      ++rep.saturated_points;
      continue;
    }
    double v = (-0.5 * big.value) - (half_log_a - small.value);
    ++rep.grid_points;
    if (v > rep.max_violation) {
      rep.max_violation = v;
      rep.worst_r = r;
    }
  }
  rep.holds = rep.max_violation <= 1e-10;
  return rep;
}

namespace {

using Constraints = std::vector<StabilityConstraint>;

Constraints m1_constraints(const WeightSequence& w, std::int64_t cutoff) {
  Constraints cs;
  for (std::int64_t k = 0; k < cutoff; ++k) {
    cs.push_back({static_cast<double>(k), w.log_m(k + 1) - w.log_m(k), k});
  }
  return cs;
}

Constraints m2_constraints(const WeightSequence& w, std::int64_t cutoff) {
  Constraints cs;
  for (std::int64_t k = 0; 2 * k <= cutoff; ++k) {
    cs.push_back({2.0 * static_cast<double>(k), w.log_m(2 * k) - 2.0 * w.log_m(k), 2 * k});
  }
  return cs;
}

Constraints m2_min_constraints(const WeightSequence& w, std::int64_t cutoff) {
  Constraints cs;
  for (std::int64_t k = 0; k <= cutoff; ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t q = 0; q <= k; ++q) best = std::min(best, w.log_m(q) + w.log_m(k - q));
    cs.push_back({static_cast<double>(k), w.log_m(k) - best, k});
  }
  return cs;
}

// k! <= C l^k M_k has the same shape with (C, l) in place of (A, H).
Constraints m3_constraints(const WeightSequence& w, std::int64_t cutoff) {
  Constraints cs;
  for (std::int64_t k = 0; k <= cutoff; ++k) {
    cs.push_back({static_cast<double>(k), std::lgamma(k + 1.0) - w.log_m(k), k});
  }
  return cs;
}

// A fitted constant that keeps growing with the cutoff is not a constant.
struct NestedFit {
  StabilityFit full;
  bool stable = false;
};

NestedFit nested_fit(Constraints (*build)(const WeightSequence&, std::int64_t),
                     const WeightSequence& w, std::int64_t cutoff, double lo, double hi) {
  NestedFit nf;
  nf.full = fit_stability(build(w, cutoff), lo, hi);
  StabilityFit half = fit_stability(build(w, cutoff / 2), lo, hi);
  nf.stable = nf.full.feasible && half.feasible && nf.full.h <= 1.5 * half.h;
  if (nf.full.feasible && !nf.stable) nf.full.witness = cutoff;
  return nf;
}

// Largest log-space excess of lhs - (log A + e log H) over the constraints.
std::pair<double, std::int64_t> excess(const Constraints& cs, double a, double h) {
  double worst = 0.0;
  std::int64_t at = -1;
  for (const auto& c : cs) {
    double v = c.lhs - (std::log(a) + c.exponent * std::log(h));
    if (v > tol_for(c.lhs) && v > worst) {
      worst = v;
      at = c.k;
    }
  }
  return {worst, at};
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

ConditionReport stability_report(const std::string& id, const WeightSequence& w,
                                 std::int64_t cutoff,
                                 Constraints (*build)(const WeightSequence&, std::int64_t)) {
  ConditionReport rep;
  rep.id = id;
  rep.cutoff = cutoff;
  NestedFit nf = nested_fit(build, w, cutoff, 1.0 / 16.0, 1e6);
  if (w.kind() != WeightKind::kUserTable) {
    // Closed-form pair for (k!)^s, verified on the table.
    auto [v, at] = excess(build(w, cutoff), w.stability_a(), w.stability_h());
    rep.a = w.stability_a();
    rep.h = w.stability_h();
    rep.holds = at < 0;
    if (!rep.holds) {
      rep.witness = at;
      rep.violation = v;
    }
    rep.note = "closed-form constants A=1, H=2^s";
    if (nf.full.feasible) {
      rep.note += "; table fit A=" + fmt(nf.full.a) + " H=" + fmt(nf.full.h);
    }
    return rep;
  }
  rep.holds = nf.stable;
  if (nf.full.feasible) {
    rep.a = nf.full.a;
    rep.h = nf.full.h;
  }
  if (!rep.holds) {
    rep.witness = nf.full.witness;
    rep.violation = std::numeric_limits<double>::infinity();
    rep.note = "no cutoff-stable (A,H) pair";
  }
  return rep;
}

}  // namespace

std::vector<ConditionReport> check_conditions(const WeightSequence& seq, std::int64_t cutoff) {
  const std::int64_t k_cut = std::min(cutoff, seq.kmax());
  if (k_cut < 7) {
    throw Error(ErrorCode::kInvalidSequence, "at least 8 tabulated values are required");
  }
  std::vector<ConditionReport> out;

  {
    ConditionReport rep;
    rep.id = "M.0";
    rep.cutoff = k_cut;
    double v = std::abs(seq.log_m(0));
    rep.holds = v <= 1e-12;
    if (!rep.holds) {
      rep.witness = 0;
      rep.violation = v;
    }
    out.push_back(rep);
  }

  out.push_back(stability_report("M.1", seq, k_cut, m1_constraints));
  out.push_back(stability_report("M.2", seq, k_cut, m2_constraints));
  out.push_back(stability_report("M.2-min", seq, k_cut, m2_min_constraints));

  {
    ConditionReport rep;
    rep.id = "M.3";
    rep.cutoff = k_cut;
    NestedFit nf = nested_fit(m3_constraints, seq, k_cut, 1e-6, 1e6);
    rep.holds = nf.stable;
    if (nf.full.feasible) {
      rep.ell = nf.full.h;
      rep.c = std::exp(nf.full.log_a);
    }
    if (!rep.holds) {
      rep.witness = nf.full.feasible ? k_cut : nf.full.witness;
      rep.violation = std::numeric_limits<double>::infinity();
      rep.note = "fitted l grows with the cutoff";
    }
    out.push_back(rep);
  }

  {
    ConditionReport rep;
    rep.id = "M.3'";
    rep.cutoff = k_cut;
    rep.holds = true;
    Constraints cs = m3_constraints(seq, k_cut);
    for (int j = -4; j <= 4; ++j) {
      double ell = std::ldexp(1.0, j);
      RequiredA r = required_log_a(cs, std::log(ell));
      if (stabilized(r, cs.size())) {
        rep.ell_grid.push_back({ell, std::exp(r.log_a)});
      } else {
        rep.ell_grid.push_back({ell, std::nullopt});
        if (rep.holds) {
          rep.holds = false;
          rep.witness = cs[r.argmax].k;
          rep.ell = ell;
          rep.violation = r.log_a;
        }
      }
    }
    out.push_back(rep);
  }

  {
    ConditionReport rep;
    rep.id = "M.4";
    rep.cutoff = k_cut;
    rep.holds = true;
    std::vector<double> g(static_cast<std::size_t>(k_cut) + 1);
    for (std::int64_t k = 0; k <= k_cut; ++k) {
      g[static_cast<std::size_t>(k)] = seq.log_m(k) - std::lgamma(k + 1.0);
    }
    for (std::int64_t r = 0; r <= k_cut && rep.holds; ++r) {
      for (std::int64_t s = 0; r + s <= k_cut; ++s) {
        double lhs = g[static_cast<std::size_t>(r)] + g[static_cast<std::size_t>(s)];
        double rhs = g[static_cast<std::size_t>(r + s)];
        if (lhs > rhs + tol_for(lhs)) {
          rep.holds = false;
          rep.witness = r + s;
          rep.violation = lhs - rhs;
          rep.note = "r=" + std::to_string(r) + " s=" + std::to_string(s);
          break;
        }
      }
    }
    out.push_back(rep);
  }

  {
    ConditionReport rep;
    rep.id = "LC";
    rep.cutoff = k_cut;
    rep.holds = true;
    for (std::int64_t k = 1; k < k_cut; ++k) {
      double lhs = 2.0 * seq.log_m(k);
      double rhs = seq.log_m(k - 1) + seq.log_m(k + 1);
      if (lhs > rhs + tol_for(lhs)) {
        rep.holds = false;
        rep.witness = k;
        rep.violation = lhs - rhs;
        break;
      }
    }
    out.push_back(rep);
  }

  {
    ConditionReport rep;
    rep.id = "monotone";
    rep.cutoff = k_cut;
    rep.holds = true;
    for (std::int64_t k = 0; k < k_cut; ++k) {
      double d = seq.log_m(k) - seq.log_m(k + 1);
      if (d > tol_for(seq.log_m(k))) {
        rep.holds = false;
        rep.witness = k;
        rep.violation = d;
        break;
      }
    }
    out.push_back(rep);
  }
  return out;
}

}  // namespace komatsu
