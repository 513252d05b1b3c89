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

#include "komatsu/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "komatsu/error.hpp"

namespace komatsu {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_compatible(const CoefficientField& c, const VectorFieldSpec& spec) {
  spec.validate();
  if (!(c.group1() == spec.x1.group) || !(c.group2() == spec.x2.group)) {
    throw Error(ErrorCode::kTruncationMismatch, "field groups " + c.group1().name() + " x " +
                                                    c.group2().name() + " do not match the operator");
  }
}

/// Divisors of one block, indexed [m-1][r-1].
std::vector<DivisorValue> block_divisors(const DivisorEvaluator& ev, const VectorFieldSpec& spec,
                                         const RepIndex& xi, const RepIndex& eta) {
  std::vector<DivisorValue> out;
  out.reserve(static_cast<std::size_t>(xi.dim() * eta.dim()));
  for (std::int64_t m = 1; m <= xi.dim(); ++m) {
    const Level l1 = level_of(spec.x1, xi, m);
    for (std::int64_t r = 1; r <= eta.dim(); ++r) {
      out.push_back(ev.eval_refined(l1, level_of(spec.x2, eta, r)));
    }
  }
  return out;
}

bool in_kernel(const DivisorValue& d) { return d.exact_zero || d.ambiguous; }

/// Calls fn(block, m, n, r, s, divisor) for every entry.
template <class Fn>
void for_each_entry(CoefficientField& c, const VectorFieldSpec& spec, int bits, Fn&& fn) {
  DivisorEvaluator ev(spec, bits);
  for (auto& [key, blk] : c.blocks()) {
    const auto ds = block_divisors(ev, spec, key.first, key.second);
    for (std::int64_t m = 1; m <= blk.d1; ++m) {
      for (std::int64_t r = 1; r <= blk.d2; ++r) {
        const DivisorValue& d = ds[static_cast<std::size_t>((m - 1) * blk.d2 + (r - 1))];
        for (std::int64_t n = 1; n <= blk.d1; ++n) {
          for (std::int64_t s = 1; s <= blk.d2; ++s) fn(key, blk.at(m, n, r, s), m, n, r, s, d);
        }
      }
    }
  }
}

cplx i_times(const DivisorValue& d) { return {-d.im, d.re}; }

}  // namespace

AdmissibilityReport check_admissible(const CoefficientField& f, const VectorFieldSpec& spec,
                                     int precision_bits) {
  require_compatible(f, spec);
  AdmissibilityReport rep;
  rep.tolerance = 1e-13 * plancherel_norm(f);
  CoefficientField scratch = f;
  for_each_entry(scratch, spec, precision_bits,
                 [&](const BlockKey& key, cplx& v, std::int64_t m, std::int64_t n, std::int64_t r,
                     std::int64_t s, const DivisorValue& d) {
                   if (!in_kernel(d)) return;
                   ++rep.kernel_entries;
                   const double mag = std::abs(v);
                   if (mag <= rep.tolerance) return;
                   rep.offending.push_back({ProductFrequency{key.first, key.second, m, r}, n, s, v, d.ambiguous});
                   rep.max_offending = std::max(rep.max_offending, mag);
                 });
  rep.admissible = rep.offending.empty();
  return rep;
}

CoefficientField solve(const CoefficientField& f, const VectorFieldSpec& spec, int precision_bits) {
  const AdmissibilityReport adm = check_admissible(f, spec, precision_bits);
  if (!adm.admissible) {
    const auto& o = adm.offending.front();
    throw Error(ErrorCode::kInadmissible, "right-hand side nonzero on the kernel at " + o.freq.xi.label() +
                                              " x " + o.freq.eta.label() + " (" +
                                              std::to_string(adm.offending.size()) + " entries)");
  }
  CoefficientField u = f;
  for_each_entry(u, spec, precision_bits,
                 [](const BlockKey&, cplx& v, std::int64_t, std::int64_t, std::int64_t, std::int64_t,
                    const DivisorValue& d) { v = in_kernel(d) ? cplx(0.0) : v / i_times(d); });
  return u;
}

CoefficientField apply(const VectorFieldSpec& spec, const CoefficientField& u, int precision_bits) {
  require_compatible(u, spec);
  CoefficientField out = u;
  for_each_entry(out, spec, precision_bits,
                 [](const BlockKey&, cplx& v, std::int64_t, std::int64_t, std::int64_t, std::int64_t,
                    const DivisorValue& d) { v = d.exact_zero ? cplx(0.0) : v * i_times(d); });
  return out;
}

CoefficientField project_off_kernel(const CoefficientField& u, const VectorFieldSpec& spec,
                                    int precision_bits) {
  require_compatible(u, spec);
  CoefficientField out = u;
  for_each_entry(out, spec, precision_bits,
                 [](const BlockKey&, cplx& v, std::int64_t, std::int64_t, std::int64_t, std::int64_t,
                    const DivisorValue& d) {
                   if (in_kernel(d)) v = 0.0;
                 });
  return out;
}

std::vector<double> default_poly_orders() { return {1.0, 2.0, 4.0, 8.0, 16.0}; }

namespace {

struct DecayPoint {
  double w;
  double log_abs;
};

DecayFit fit_residual(const std::vector<DecayPoint>& pts, double n, double w_max, std::size_t bins,
                      const std::function<double(const DecayPoint&)>& residual) {
  DecayFit fit;
  fit.n = n;
  fit.log_c = -kInf;
  fit.log_c_low = -kInf;
  std::vector<double> bin_max(bins, -kInf);
  for (const auto& p : pts) {
    const double v = residual(p);
    fit.log_c = std::max(fit.log_c, v);
    if (p.w <= w_max / 10.0 * (1.0 + 1e-12)) fit.log_c_low = std::max(fit.log_c_low, v);
    const double from_top = std::floor(4.0 * std::log10(w_max / p.w));
    const std::size_t b = bins - 1 - std::min<std::size_t>(bins - 1, static_cast<std::size_t>(from_top));
    bin_max[b] = std::max(bin_max[b], v);
  }
  for (std::size_t b = 0; b < bins; ++b) {
    fit.curve.emplace_back(w_max / std::pow(10.0, static_cast<double>(bins - 1 - b) / 4.0), bin_max[b]);
  }
  fit.stable = std::isfinite(fit.log_c_low) && fit.log_c - fit.log_c_low < std::log(10.0);
  return fit;
}

bool all_stable(const std::vector<DecayFit>& fits) {
  return !fits.empty() && std::all_of(fits.begin(), fits.end(), [](const DecayFit& f) { return f.stable; });
}

bool any_stable(const std::vector<DecayFit>& fits) {
  return std::any_of(fits.begin(), fits.end(), [](const DecayFit& f) { return f.stable; });
}

}  // namespace

DecayVerdict classify_decay(const CoefficientField& c, const AssociatedFunction& weights,
                            const std::vector<double>& n_grid, const std::vector<double>& poly_orders) {
  if (n_grid.empty()) throw Error(ErrorCode::kInvalidInput, "empty N grid");
  std::vector<DecayPoint> pts;
  for (const auto& [key, blk] : c.blocks()) {
    const double w = key.first.weight() + key.second.weight();
    for (const cplx& v : blk.a) {
      if (v != 0.0) pts.push_back({w, std::log(std::abs(v))});
    }
  }
  DecayVerdict out;
  out.coefficients = pts.size();
  if (pts.size() < 30) {
    throw Error(ErrorCode::kInsufficientSpan,
                "need at least 30 nonzero coefficients, found " + std::to_string(pts.size()));
  }
  auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                      [](const DecayPoint& a, const DecayPoint& b) { return a.w < b.w; });
  out.w_min = lo->w;
  out.w_max = hi->w;
  if (out.w_max < 10.0 * out.w_min * (1.0 - 1e-12)) {
    throw Error(ErrorCode::kInsufficientSpan, "weight range ratio below 10");
  }
  const std::size_t bins = static_cast<std::size_t>(std::floor(4.0 * std::log10(out.w_max / out.w_min))) + 1;
  for (double n : n_grid) {
    out.function_fits.push_back(fit_residual(pts, n, out.w_max, bins, [&](const DecayPoint& p) {
      return p.log_abs + weights.evaluate(n * p.w).value;
    }));
    out.distribution_fits.push_back(fit_residual(pts, n, out.w_max, bins, [&](const DecayPoint& p) {
      return p.log_abs - weights.evaluate(n * p.w).value;
    }));
  }
  for (double p : poly_orders) {
    out.smooth_fits.push_back(fit_residual(pts, p, out.w_max, bins, [&](const DecayPoint& q) {
      return q.log_abs + p * std::log(q.w);
    }));
    out.order_fits.push_back(fit_residual(pts, p, out.w_max, bins, [&](const DecayPoint& q) {
      return q.log_abs - p * std::log(q.w);
    }));
  }
  out.beurling_function = all_stable(out.function_fits);
  out.roumieu_function = any_stable(out.function_fits);
  out.smooth = all_stable(out.smooth_fits);
  out.finite_order = any_stable(out.order_fits);
  out.roumieu_ultradistribution = all_stable(out.distribution_fits);
  out.beurling_ultradistribution = any_stable(out.distribution_fits);
  for (const auto& f : out.function_fits) {
    if (f.stable && (!out.fitted_n || f.n > *out.fitted_n)) out.fitted_n = f.n;
  }
  for (const auto& f : out.order_fits) {
    if (f.stable && (!out.fitted_order || f.n < *out.fitted_order)) out.fitted_order = f.n;
  }
  out.lattice_consistent = (!out.beurling_function || out.roumieu_function) &&
                           (!out.roumieu_ultradistribution || out.beurling_ultradistribution) &&
                           (!out.roumieu_function || out.roumieu_ultradistribution);
  if (out.beurling_function) {
    out.label = "beurling-function";
  } else if (out.roumieu_function) {
    out.label = "roumieu-function";
  } else if (out.smooth) {
    out.label = "smooth";
  } else if (out.finite_order) {
    out.label = "distribution-finite-order";
  } else if (out.roumieu_ultradistribution) {
    out.label = "roumieu-ultradistribution";
  } else if (out.beurling_ultradistribution) {
    out.label = "beurling-ultradistribution";
  } else {
    out.label = "inconclusive";
  }
  out.trend_test = "stable iff the maximum residual over all coefficients exceeds the maximum over "
                   "w <= w_max/10 by less than 10x";
  return out;
}

const char* to_string(AdversarialMode mode) {
  switch (mode) {
    case AdversarialMode::kHypoRoumieu: return "hypo-roumieu";
    case AdversarialMode::kSolvRoumieu: return "solv-roumieu";
    case AdversarialMode::kHypoBeurling: return "hypo-beurling";
  }
  return "hypo-roumieu";
}

AdversarialMode parse_adversarial_mode(const std::string& name) {
  if (name == "hypo-roumieu") return AdversarialMode::kHypoRoumieu;
  if (name == "solv-roumieu") return AdversarialMode::kSolvRoumieu;
  if (name == "hypo-beurling") return AdversarialMode::kHypoBeurling;
  throw Error(ErrorCode::kInvalidInput, "unknown adversarial mode '" + name + "'");
}

namespace {

std::pair<RepIndex, std::int64_t> minimal_class(const GroupTag& g, std::int64_t key) {
  switch (g.kind) {
    case GroupKind::kTorus: return {RepIndex::torus1(key), 1};
    case GroupKind::kSU2: {
      const std::int64_t tl = key < 0 ? -key : key;
      return {RepIndex::su2(tl), su2_row(tl, key)};
    }
    case GroupKind::kTrivial: break;
  }
  return {RepIndex::trivial(), 1};
}


}  // namespace

std::vector<DivisorRecord> near_resonances(const VectorFieldSpec& spec, const Truncation& trunc,
                                           int precision_bits) {
  spec.validate();
  DivisorEvaluator ev(spec, precision_bits);
  const auto lv1 = factor_levels(spec.x1, trunc.cut1);
  const auto lv2 = factor_levels(spec.x2, trunc.cut2);
  const double alpha = spec.alpha ? spec.alpha_double() : 0.0;
  const double coef = spec.x1.coef.get_d();
  // Eigenvalue step between consecutive keys of the first factor.
  const double step = spec.x1.group.kind == GroupKind::kSU2 ? coef / 2.0 : coef;
  const std::int64_t lo = lv1.front().key, hi = lv1.back().key;
  std::vector<DivisorRecord> out;
  for (const Level& b : lv2) {
    std::vector<std::int64_t> keys;
    if (spec.x1.group.kind == GroupKind::kTrivial || step == 0.0) {
      keys.push_back(0);
    } else {
      const double target = -(spec.a.re(alpha) * b.eigen_d + spec.q.im(alpha)) / step;
      const double f = std::floor(target);
      for (double k : {f, f + 1.0}) {
        if (k >= static_cast<double>(lo) && k <= static_cast<double>(hi)) keys.push_back(static_cast<std::int64_t>(k));
      }
    }
    for (std::int64_t key : keys) {
      const Level& a = lv1[static_cast<std::size_t>(key - lo)];
      DivisorValue d = ev.eval(a, b);
      if (d.exact_zero || d.ambiguous) continue;
      auto [xi, m] = minimal_class(spec.x1.group, key);
      auto [eta, r] = minimal_class(spec.x2.group, b.key);
      out.push_back({ProductFrequency{xi, eta, m, r}, d, a.min_weight + b.min_weight});
    }
  }
  return out;
}

AdversarialCase adversarial_field(const VectorFieldSpec& spec, const Truncation& trunc,
                                  const AssociatedFunction& weights, AdversarialMode mode,
                                  const DiophantineVerdict& verdict, int precision_bits) {
  if (verdict.witnesses.empty() || !verdict.worst_fit) {
    throw Error(ErrorCode::kNoWitnesses, "the verdict carries no violation witnesses");
  }
  const PerNFit& fit = verdict.fits.at(*verdict.worst_fit);
  const bool polynomial = verdict.comparison == "polynomial";
  auto penalty = [&](double n, double w) {
    return polynomial ? n * std::log(w) : weights.evaluate(n * w).value;
  };
  const double log_ref = fit.log_c_initial + std::log(verdict.witness_factor);

  auto cands = near_resonances(spec, trunc, precision_bits);
  std::stable_sort(cands.begin(), cands.end(), [](const DivisorRecord& x, const DivisorRecord& y) {
    return x.w != y.w ? x.w < y.w : x.d.log_abs < y.d.log_abs;
  });
  AdversarialCase out;
  out.mode = mode;
  out.n = fit.n;
  double k = 1.0;
  for (const auto& c : cands) {
    const double pen = mode == AdversarialMode::kHypoBeurling ? penalty(k, c.w) : penalty(fit.n, c.w);
    if (c.d.log_abs + pen < log_ref - std::log(k)) {
      out.witnesses.push_back(c);
      k += 1.0;
    }
  }
  if (out.witnesses.empty()) {
    throw Error(ErrorCode::kNoWitnesses, "no frequency in the truncation meets the witness bound");
  }
  Truncation band;
  for (const auto& wr : out.witnesses) {
    band.cut1 = std::max(band.cut1, class_cut(wr.freq.xi));
    band.cut2 = std::max(band.cut2, class_cut(wr.freq.eta));
  }
  out.f = CoefficientField(spec.x1.group, spec.x2.group, band);
  out.u = out.f;
  for (const auto& wr : out.witnesses) {
    const cplx d(wr.d.re, wr.d.im);
    const cplx id(-wr.d.im, wr.d.re);
    cplx& fv = out.f.block(wr.freq.xi, wr.freq.eta).at(wr.freq.m, 1, wr.freq.r, 1);
    cplx& uv = out.u.block(wr.freq.xi, wr.freq.eta).at(wr.freq.m, 1, wr.freq.r, 1);
    switch (mode) {
      case AdversarialMode::kHypoRoumieu:
        fv = d * wr.w;
        uv = cplx(0.0, -wr.w);
        break;
      case AdversarialMode::kSolvRoumieu:
        fv = 1.0;
        uv = 1.0 / id;
        break;
      case AdversarialMode::kHypoBeurling:
        uv = 1.0;
        fv = id;
        break;
    }
  }
  return out;
}

}  // namespace komatsu
