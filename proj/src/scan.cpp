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

#include "komatsu/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "komatsu/error.hpp"

namespace komatsu {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBinsPerDecade = 4;

struct BinLayout {
  double w_max;
  int bins;
  std::vector<double> edges;

  explicit BinLayout(double wm) : w_max(wm) {
    bins = std::max(9, static_cast<int>(std::ceil(kBinsPerDecade * std::log10(wm))) + 1);
    for (int b = 0; b <= bins; ++b) {
      edges.push_back(wm * std::pow(10.0, -static_cast<double>(bins - b) / kBinsPerDecade));
    }
    edges.back() = wm;
  }

  int bin(double w) const {
    int b = bins - 1 - static_cast<int>(std::floor(kBinsPerDecade * std::log10(w_max / w)));
    return std::clamp(b, 0, bins - 1);
  }
};

struct Candidate {
  double value = kInf;
  std::size_t pair = 0;
  double w = 0.0, log_d = 0.0;
};

bool better(double value, std::size_t pair, const Candidate& c) {
  return value < c.value || (value == c.value && pair < c.pair);
}

struct LocalState {
  std::vector<Candidate> best;  // [penalty * bins + bin]
  std::vector<double> thr;      // prune when log|D| > thr[bin]
  std::vector<std::size_t> zeros;
  std::size_t nonzero = 0, refined = 0, ambiguous = 0;
};

ProductFrequency representative(const VectorFieldSpec& spec, const Truncation& trunc,
                                const Level& l1, const Level& l2) {
  auto c1 = level_classes(spec.x1.group, l1.key, trunc.cut1).front();
  auto c2 = level_classes(spec.x2.group, l2.key, trunc.cut2).front();
  return {c1.first, c2.first, c1.second, c2.second};
}

}  // namespace

double Penalty::operator()(double w) const {
  if (kind == Kind::kPolynomial) return n * std::log(w);
  return af->evaluate(n * w).value;
}

std::string Penalty::label() const {
  char buf[64];
  if (kind == Kind::kPolynomial) {
    std::snprintf(buf, sizeof buf, "w^%g", n);
  } else {
    std::snprintf(buf, sizeof buf, "exp M(%g w)", n);
  }
  return buf;
}

std::vector<Penalty> associated_penalties(const AssociatedFunction& af, const std::vector<double>& grid) {
  std::vector<Penalty> out;
  for (double n : grid) {
    if (!(n > 0.0)) throw Error(ErrorCode::kInvalidInput, "N-grid values must be positive");
    out.push_back({Penalty::Kind::kAssociated, n, &af});
  }
  return out;
}

std::vector<Penalty> polynomial_penalties(const std::vector<double>& orders) {
  std::vector<Penalty> out;
  for (double n : orders) {
    if (!(n >= 0.0)) throw Error(ErrorCode::kInvalidInput, "polynomial orders must be nonnegative");
    out.push_back({Penalty::Kind::kPolynomial, n, nullptr});
  }
  return out;
}

std::vector<double> default_n_grid() {
  std::vector<double> g;
  for (int j = -4; j <= 4; ++j) g.push_back(std::ldexp(1.0, j));
  return g;
}

const char* to_string(FitMode mode) { return mode == FitMode::kRoumieu ? "roumieu" : "beurling"; }

FitMode parse_fit_mode(const std::string& name) {
  if (name == "roumieu") return FitMode::kRoumieu;
  if (name == "beurling") return FitMode::kBeurling;
  throw Error(ErrorCode::kInvalidInput, "mode must be 'roumieu' or 'beurling'");
}

ScanResult scan_spectrum(const VectorFieldSpec& spec, const Truncation& trunc,
                         const std::vector<Penalty>& penalties, int precision_bits, int threads) {
  if (trunc.cut1 < 0 || trunc.cut2 < 0) throw Error(ErrorCode::kInvalidInput, "negative truncation");
  DivisorEvaluator ev(spec, precision_bits);
  const auto lv1 = factor_levels(spec.x1, trunc.cut1);
  const auto lv2 = factor_levels(spec.x2, trunc.cut2);
  ScanResult res;
  res.trunc = trunc;
  res.penalties = penalties;
  res.precision_bits = precision_bits;
  res.w1_cut = factor_max_weight(spec.x1.group, trunc.cut1);
  res.w2_cut = factor_max_weight(spec.x2.group, trunc.cut2);
  res.w_max = res.w1_cut + res.w2_cut;
  const BinLayout layout(res.w_max);
  res.edges = layout.edges;
  const std::size_t P = penalties.size();
  const auto B = static_cast<std::size_t>(layout.bins);
  const std::size_t n2 = lv2.size();
  const std::size_t total = lv1.size() * n2;
  res.level_pairs = total;

  std::vector<double> pen_lo(P * B);
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t b = 0; b < B; ++b) pen_lo[p * B + b] = penalties[p](layout.edges[b]);
  }

  auto work = [&](std::size_t begin, std::size_t end, LocalState& st) {
    st.best.assign(P * B, Candidate{});
    st.thr.assign(B, kInf);
    for (std::size_t idx = begin; idx < end; ++idx) {
      const Level& a = lv1[idx / n2];
      const Level& b = lv2[idx % n2];
      DivisorValue v = ev.eval(a, b);
      if (v.exact_zero) {
        st.zeros.push_back(idx);
        continue;
      }
      if (v.ambiguous) {
        ++st.ambiguous;
        continue;
      }
      ++st.nonzero;
      if (v.refined) ++st.refined;
      const double w = a.min_weight + b.min_weight;
      const auto bin = static_cast<std::size_t>(layout.bin(w));
      if (v.log_abs > st.thr[bin]) continue;
      bool changed = false;
      for (std::size_t p = 0; p < P; ++p) {
        double val = v.log_abs + penalties[p](w);
        Candidate& c = st.best[p * B + bin];
        if (better(val, idx, c)) {
          c = {val, idx, w, v.log_abs};
          changed = true;
        }
      }
      if (changed) {
        double t = -kInf;
        for (std::size_t p = 0; p < P; ++p) {
          t = std::max(t, st.best[p * B + bin].value - pen_lo[p * B + bin]);
        }
        st.thr[bin] = t;
      }
    }
  };

  int nt = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  nt = std::min(nt, 16);
  if (total < 100000) nt = 1;
  std::vector<LocalState> states(static_cast<std::size_t>(nt));
  {
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + static_cast<std::size_t>(nt) - 1) / static_cast<std::size_t>(nt);
    for (int t = 0; t < nt; ++t) {
      std::size_t begin = std::min(total, chunk * static_cast<std::size_t>(t));
      std::size_t end = std::min(total, begin + chunk);
      pool.emplace_back(work, begin, end, std::ref(states[static_cast<std::size_t>(t)]));
    }
    for (auto& th : pool) th.join();
  }

  std::vector<Candidate> best(P * B);
  std::vector<std::size_t> zeros;
  for (const auto& st : states) {
    for (std::size_t i = 0; i < P * B; ++i) {
      if (better(st.best[i].value, st.best[i].pair, best[i])) best[i] = st.best[i];
    }
    zeros.insert(zeros.end(), st.zeros.begin(), st.zeros.end());
    res.nonzero += st.nonzero;
    res.refined += st.refined;
    res.ambiguous += st.ambiguous;
  }
  std::sort(zeros.begin(), zeros.end());

  res.bin_min.assign(P, std::vector<double>(B, kInf));
  res.bin_arg.assign(P, std::vector<std::optional<Witness>>(B));
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t b = 0; b < B; ++b) {
      const Candidate& c = best[p * B + b];
      if (c.value == kInf) continue;
      res.bin_min[p][b] = c.value;
      res.bin_arg[p][b] = Witness{representative(spec, trunc, lv1[c.pair / n2], lv2[c.pair % n2]),
                                  c.w, c.log_d, c.value};
    }
  }

  KernelCensus& census = res.census;
  census.w1_cut = res.w1_cut;
  census.w2_cut = res.w2_cut;
  census.ambiguous = res.ambiguous;
  std::set<std::pair<RepIndex, RepIndex>> seen;
  for (std::size_t idx : zeros) {
    const Level& a = lv1[idx / n2];
    const Level& b = lv2[idx % n2];
    for (const auto& [xi, m] : level_classes(spec.x1.group, a.key, trunc.cut1)) {
      for (const auto& [eta, r] : level_classes(spec.x2.group, b.key, trunc.cut2)) {
        if (!seen.insert({xi, eta}).second) continue;
        census.elements.push_back({xi, eta, m, r});
        if ((res.w1_cut > 1.0 && xi.weight() >= 0.8 * res.w1_cut) ||
            (res.w2_cut > 1.0 && eta.weight() >= 0.8 * res.w2_cut)) {
          census.still_growing = true;
        }
      }
    }
  }
  census.count = census.elements.size();
  return res;
}

ScanResult accumulate_records(const std::vector<DivisorRecord>& spectrum,
                              const std::vector<Penalty>& penalties) {
  ScanResult res;
  res.penalties = penalties;
  for (const auto& rec : spectrum) {
    res.w1_cut = std::max(res.w1_cut, rec.freq.xi.weight());
    res.w2_cut = std::max(res.w2_cut, rec.freq.eta.weight());
  }
  res.w_max = res.w1_cut + res.w2_cut;
  const BinLayout layout(res.w_max);
  res.edges = layout.edges;
  const std::size_t P = penalties.size();
  const auto B = static_cast<std::size_t>(layout.bins);
  res.bin_min.assign(P, std::vector<double>(B, kInf));
  res.bin_arg.assign(P, std::vector<std::optional<Witness>>(B));
  res.level_pairs = spectrum.size();
  for (const auto& rec : spectrum) {
    if (rec.d.exact_zero) continue;
    if (rec.d.ambiguous) {
      ++res.ambiguous;
      continue;
    }
    ++res.nonzero;
    if (rec.d.refined) ++res.refined;
    const auto bin = static_cast<std::size_t>(layout.bin(rec.w));
    for (std::size_t p = 0; p < P; ++p) {
      double val = rec.d.log_abs + penalties[p](rec.w);
      if (val < res.bin_min[p][bin]) {
        res.bin_min[p][bin] = val;
        res.bin_arg[p][bin] = Witness{rec.freq, rec.w, rec.d.log_abs, val};
      }
    }
  }
  res.census = kernel_set(spectrum, res.w1_cut, res.w2_cut);
  return res;
}

DiophantineVerdict verdict_from_scan(const ScanResult& scan, std::size_t first, std::size_t count,
                                     FitMode mode, double witness_factor) {
  if (first + count > scan.penalties.size()) {
    throw Error(ErrorCode::kInvalidInput, "penalty range outside scan");
  }
  if (scan.nonzero == 0) throw Error(ErrorCode::kEmptySpectrum, "no nonzero divisors in truncation");
  DiophantineVerdict v;
  v.mode = mode;
  v.census = scan.census;
  v.w_max = scan.w_max;
  v.witness_factor = witness_factor;
  v.trend_test =
      "stable iff the minimum over w < w_max/100 exceeds the full-truncation minimum by less than 10x";
  const std::size_t B = scan.edges.size() - 1;
  const std::size_t b100 = B >= 8 ? B - 8 : 0;
  const std::size_t b10 = B >= 4 ? B - 4 : 0;
  const double log_factor = std::log(witness_factor);
  double worst_drop = -kInf;
  for (std::size_t p = first; p < first + count; ++p) {
    const Penalty& pen = scan.penalties[p];
    v.comparison = pen.kind == Penalty::Kind::kPolynomial ? "polynomial" : "associated";
    PerNFit fit;
    fit.n = pen.n;
    fit.label = pen.label();
    double running = kInf;
    double initial = kInf;
    fit.log_c_w100 = kInf;
    fit.log_c_w10 = kInf;
    for (std::size_t b = 0; b < B; ++b) {
      if (b == b100) fit.log_c_w100 = running;
      if (b == b10) fit.log_c_w10 = running;
      double m = scan.bin_min[p][b];
      if (m < running) {
        if (initial == kInf) {
          initial = m;
        } else if (m < initial + log_factor) {
          fit.witnesses.push_back(*scan.bin_arg[p][b]);
        }
        running = m;
        fit.argmin = scan.bin_arg[p][b];
      }
      fit.curve.emplace_back(scan.edges[b + 1], running);
    }
    fit.log_c = running;
    fit.log_c_initial = initial;
    fit.stable = std::isfinite(fit.log_c) && std::isfinite(fit.log_c_w100) &&
                 fit.log_c_w100 - fit.log_c < std::log(10.0);
    if (!fit.stable) {
      double drop = std::isfinite(fit.log_c_w100) ? fit.log_c_w100 - fit.log_c : kInf;
      if (drop > worst_drop) {
        worst_drop = drop;
        v.witnesses = fit.witnesses;
        v.worst_fit = v.fits.size();
      }
    }
    v.fits.push_back(std::move(fit));
  }
  v.roumieu_consistent = !v.fits.empty() &&
      std::all_of(v.fits.begin(), v.fits.end(), [](const PerNFit& f) { return f.stable; });
  v.beurling_consistent =
      std::any_of(v.fits.begin(), v.fits.end(), [](const PerNFit& f) { return f.stable; });
  v.condition_consistent = mode == FitMode::kRoumieu ? v.roumieu_consistent : v.beurling_consistent;
  v.kernel_finite_consistent = !v.census.still_growing;
  v.solvable_consistent = v.condition_consistent;
  v.hypoelliptic_consistent = v.kernel_finite_consistent && v.condition_consistent;
  return v;
}

DiophantineVerdict diophantine_fit(const std::vector<DivisorRecord>& spectrum,
                                   const AssociatedFunction& weights, FitMode mode,
                                   const std::vector<double>& n_grid) {
  auto pens = associated_penalties(weights, n_grid);
  ScanResult scan = accumulate_records(spectrum, pens);
  return verdict_from_scan(scan, 0, pens.size(), mode);
}

DiophantineVerdict smoothness_fit(const std::vector<DivisorRecord>& spectrum,
                                  const std::vector<double>& orders, double witness_factor) {
  auto pens = polynomial_penalties(orders);
  ScanResult scan = accumulate_records(spectrum, pens);
  return verdict_from_scan(scan, 0, pens.size(), FitMode::kBeurling, witness_factor);
}

OperatorAnalysis analyze_operator(const VectorFieldSpec& spec, const Truncation& trunc,
                                  const AssociatedFunction& weights, FitMode mode,
                                  const std::vector<double>& n_grid,
                                  const std::vector<double>& smooth_orders, int precision_bits,
                                  double smooth_witness_factor) {
  auto pens = associated_penalties(weights, n_grid);
  auto poly = polynomial_penalties(smooth_orders);
  pens.insert(pens.end(), poly.begin(), poly.end());
  OperatorAnalysis out;
  out.scan = scan_spectrum(spec, trunc, pens, precision_bits);
  out.komatsu = verdict_from_scan(out.scan, 0, n_grid.size(), mode);
  if (!smooth_orders.empty()) {
    out.smooth = verdict_from_scan(out.scan, n_grid.size(), smooth_orders.size(), FitMode::kBeurling,
                                   smooth_witness_factor);
  }
  return out;
}

}  // namespace komatsu
