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

#include "reports.hpp"

#include <cmath>

namespace komatsu::report {

json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

namespace {

template <class T>
json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) {
    return number(*v);
  } else {
    return *v;
  }
}

json curve_json(const std::vector<std::pair<double, double>>& c) {
  json a = json::array();
  for (const auto& [w, v] : c) a.push_back({number(w), number(v)});
  return a;
}

}  // namespace

json to_json(const ConditionReport& r) {
  json ell = json::array();
  for (const auto& [l, c] : r.ell_grid) ell.push_back({number(l), opt(c)});
  json j{{"id", r.id},          {"holds", r.holds},   {"witness", opt(r.witness)},
         {"violation", number(r.violation)}, {"a", opt(r.a)}, {"h", opt(r.h)},
         {"ell", opt(r.ell)},  {"c", opt(r.c)},      {"cutoff", r.cutoff},
         {"truncated", r.truncated}, {"note", r.note}};
  if (!r.ell_grid.empty()) j["ell_grid"] = ell;
  return j;
}

json to_json(const DominationResult& r) {
  return {{"constant", number(r.constant)}, {"log_constant", number(r.log_constant)},
          {"argmax_r", number(r.argmax_r)}, {"grid", {number(r.grid_lo), number(r.grid_hi)}},
          {"grid_points", r.grid_points}};
}

json to_json(const HalvingReport& r) {
  return {{"q", number(r.q)},           {"h", number(r.h)},
          {"a", number(r.a)},           {"max_violation", number(r.max_violation)},
          {"worst_r", number(r.worst_r)}, {"grid_points", r.grid_points},
          {"saturated_points", r.saturated_points}, {"holds", r.holds}};
}

json to_json(const ApproximationProfile& p) {
  json recs = json::array();
  for (const auto& c : p.records) {
    recs.push_back({{"n", c.n},
                    {"p", c.p.get_str()},
                    {"q", c.q.get_str()},
                    {"log_q", number(c.log_q)},
                    {"log_gap", number(c.log_gap)},
                    {"log_gap_bounds", {number(c.log_gap_lo), number(c.log_gap_hi)}},
                    {"bracket_ok", c.bracket_ok},
                    {"power_exponent", number(c.power_exponent)},
                    {"exp_epsilon", number(c.exp_epsilon)}});
  }
  return {{"rational", p.rational},
          {"precision_bits", p.precision_bits},
          {"s", number(p.s)},
          {"records", recs},
          {"coprime_ok", p.coprime_ok},
          {"alternation_ok", p.alternation_ok},
          {"gap_decreasing", p.gap_decreasing},
          {"tested_powers", p.tested_powers},
          {"max_power_exponent", number(p.max_power_exponent)},
          {"liouville_consistent", p.liouville_consistent},
          {"exp_liouville_consistent", p.exp_liouville_consistent},
          {"note", p.note}};
}

json to_json(const ProductFrequency& f) {
  return {{"xi", f.xi.label()}, {"eta", f.eta.label()}, {"m", f.m}, {"r", f.r}};
}

json to_json(const Witness& w) {
  return {{"freq", to_json(w.freq)}, {"w", number(w.w)}, {"log_abs_d", number(w.log_abs_d)},
          {"log_value", number(w.log_value)}};
}

json to_json(const KernelCensus& c, std::size_t max_listed) {
  json el = json::array();
  for (std::size_t i = 0; i < c.elements.size() && i < max_listed; ++i) el.push_back(to_json(c.elements[i]));
  return {{"count", c.count},
          {"ambiguous", c.ambiguous},
          {"still_growing", c.still_growing},
          {"empirically_finite", !c.still_growing},
          {"listed", el},
          {"w_cut", {number(c.w1_cut), number(c.w2_cut)}}};
}

json to_json(const PerNFit& f, bool with_curve) {
  json w = json::array();
  for (const auto& x : f.witnesses) w.push_back(to_json(x));
  json j{{"n", number(f.n)},
         {"label", f.label},
         {"log_c", number(f.log_c)},
         {"log_c_w10", number(f.log_c_w10)},
         {"log_c_w100", number(f.log_c_w100)},
         {"log_c_initial", number(f.log_c_initial)},
         {"stable", f.stable},
         {"argmin", f.argmin ? to_json(*f.argmin) : json(nullptr)},
         {"witnesses", w}};
  if (with_curve) j["curve"] = curve_json(f.curve);
  return j;
}

json to_json(const DiophantineVerdict& v, bool with_curves) {
  json fits = json::array();
  for (const auto& f : v.fits) fits.push_back(to_json(f, with_curves));
  json w = json::array();
  for (const auto& x : v.witnesses) w.push_back(to_json(x));
  return {{"mode", to_string(v.mode)},
          {"comparison", v.comparison},
          {"fits", fits},
          {"roumieu_consistent", v.roumieu_consistent},
          {"beurling_consistent", v.beurling_consistent},
          {"condition_consistent", v.condition_consistent},
          {"kernel_finite_consistent", v.kernel_finite_consistent},
          {"hypoelliptic_consistent", v.hypoelliptic_consistent},
          {"solvable_consistent", v.solvable_consistent},
          {"witnesses", w},
          {"census", to_json(v.census)},
          {"w_max", number(v.w_max)},
          {"witness_factor", number(v.witness_factor)},
          {"trend_test", v.trend_test},
          {"qualifier", "up to truncation"}};
}

json to_json(const AdmissibilityReport& r, std::size_t max_listed) {
  json off = json::array();
  for (std::size_t i = 0; i < r.offending.size() && i < max_listed; ++i) {
    const auto& o = r.offending[i];
    off.push_back({{"freq", to_json(o.freq)},
                   {"n", o.n},
                   {"s", o.s},
                   {"value", {number(o.value.real()), number(o.value.imag())}},
                   {"ambiguous", o.ambiguous}});
  }
  return {{"admissible", r.admissible},
          {"offending_count", r.offending.size()},
          {"offending", off},
          {"max_offending", number(r.max_offending)},
          {"tolerance", number(r.tolerance)},
          {"kernel_entries", r.kernel_entries}};
}

json to_json(const DecayFit& f, bool with_curve) {
  json j{{"n", number(f.n)}, {"log_c", number(f.log_c)}, {"log_c_low", number(f.log_c_low)}, {"stable", f.stable}};
  if (with_curve) j["curve"] = curve_json(f.curve);
  return j;
}

json to_json(const DecayVerdict& v, bool with_curves) {
  auto fits = [&](const std::vector<DecayFit>& fs) {
    json a = json::array();
    for (const auto& f : fs) a.push_back(to_json(f, with_curves));
    return a;
  };
  return {{"label", v.label},
          {"beurling_function", v.beurling_function},
          {"roumieu_function", v.roumieu_function},
          {"smooth", v.smooth},
          {"distribution_finite_order", v.finite_order},
          {"roumieu_ultradistribution", v.roumieu_ultradistribution},
          {"beurling_ultradistribution", v.beurling_ultradistribution},
          {"lattice_consistent", v.lattice_consistent},
          {"fitted_n", opt(v.fitted_n)},
          {"fitted_order", opt(v.fitted_order)},
          {"function_fits", fits(v.function_fits)},
          {"distribution_fits", fits(v.distribution_fits)},
          {"smooth_fits", fits(v.smooth_fits)},
          {"order_fits", fits(v.order_fits)},
          {"coefficients", v.coefficients},
          {"w_range", {number(v.w_min), number(v.w_max)}},
          {"trend_test", v.trend_test}};
}

json to_json(const ExpReport& r) {
  return {{"order", r.order},
          {"sup_norm", number(r.sup_norm)},
          {"series_tail", number(r.series_tail)},
          {"outer_shell", number(r.outer_shell)},
          {"band", {r.band.cut1, r.band.cut2}}};
}

json to_json(const EnvelopeReport& r) {
  json sup = json::array(), k = json::array();
  for (double x : r.sup_derivative) sup.push_back(number(x));
  for (double x : r.k_needed) k.push_back(number(x));
  return {{"h", number(r.h)},       {"sup_derivative", sup}, {"k_needed", k},
          {"k_fit", number(r.k_fit)}, {"k_limit", number(r.k_limit)}, {"holds", r.holds},
          {"worst_order", r.worst_order}, {"worst_point", number(r.worst_point)},
          {"spectral_band", r.spectral_band}};
}

}  // namespace komatsu::report
