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

#include <cmath>

#include "doctest.h"
#include "komatsu/error.hpp"
#include "komatsu/operator.hpp"
#include "komatsu/s3_example.hpp"
#include "komatsu/scan.hpp"

using namespace komatsu;

namespace {

VectorFieldSpec torus_pair(const ExactScalar& a, std::optional<ContinuedFraction> alpha = std::nullopt) {
  VectorFieldSpec spec;
  spec.x1 = {GroupTag::torus(1), 1};
  spec.x2 = {GroupTag::torus(1), 1};
  spec.a = a;
  spec.alpha = std::move(alpha);
  spec.validate();
  return spec;
}

}  // namespace

TEST_CASE("exact scalars parse sums of rational and alpha terms") {
  const auto s = ExactScalar::parse("1/2 + alpha*i");
  CHECK(s.re0 == mpq_class(1, 2));
  CHECK(s.im_alpha == 1);
  CHECK(s.re_alpha == 0);
  CHECK(s.im0 == 0);
  CHECK(ExactScalar::parse("1/2 i").im0 == mpq_class(1, 2));
  CHECK(ExactScalar::parse("-3alpha").re_alpha == -3);
  CHECK(ExactScalar::parse("0.25").re0 == mpq_class(1, 4));
  CHECK(ExactScalar::parse("alpha i").to_string() == "alpha*i");
  CHECK_THROWS_AS(ExactScalar::parse("1/0"), std::exception);
}

TEST_CASE("levels of SU2 are keyed by 2m with minimal weight at l = |m|") {
  FactorRule rule{GroupTag::su2(), 1};
  const auto levels = factor_levels(rule, 2);
  CHECK(levels.size() == 9);  // 2m = -4..4
  for (const auto& lv : levels) {
    const double l = std::abs(static_cast<double>(lv.key)) / 2.0;
    CHECK(lv.min_weight == doctest::Approx(std::sqrt(1.0 + l * (l + 1.0))));
    CHECK(lv.eigen_d == doctest::Approx(lv.key / 2.0));
  }
}

TEST_CASE("rational slope has exact zero divisors along a line") {
  const auto spec = torus_pair(ExactScalar::rational(2));
  const auto spectrum = divisor_spectrum(spec, {10, 5});
  std::size_t zeros = 0;
  for (const auto& rec : spectrum) {
    const bool on_line = rec.freq.xi.k[0] + 2 * rec.freq.eta.k[0] == 0;
    CHECK(rec.d.exact_zero == on_line);
    zeros += rec.d.exact_zero;
  }
  CHECK(zeros == 11);  // j = -5..5
  const auto census = kernel_set(spectrum, spec, {10, 5});
  CHECK(census.count == 11);
}

TEST_CASE("divisors of an irrational slope never vanish") {
  const auto spec = torus_pair(ExactScalar::alpha_multiple(1), ContinuedFraction::sqrt2());
  for (const auto& rec : divisor_spectrum(spec, {30, 30})) {
    if (rec.freq.xi.k[0] == 0 && rec.freq.eta.k[0] == 0) {
      CHECK(rec.d.exact_zero);
      continue;
    }
    CHECK_FALSE(rec.d.exact_zero);
    CHECK(rec.d.abs == doctest::Approx(std::abs(rec.freq.xi.k[0] + std::sqrt(2.0) * rec.freq.eta.k[0])));
  }
}

TEST_CASE("refinement resolves cancellation below double precision") {
  // q1 alpha - p1 for alpha = [10; 100, 10^6, ...] is about 1e-8; the
  // 1/2 shift makes k + alpha m + 1/2 vanish to ~5e-9.
  VectorFieldSpec spec = s3_operator();
  spec.q = ExactScalar::parse("1/2 i");
  DivisorEvaluator ev(spec, 256);
  Level l1{-501, -501, -501.0, std::sqrt(1.0 + 501.0 * 501.0)};
  Level l2{100, 50, 50.0, std::sqrt(1.0 + 50.0 * 51.0)};
  const auto v = ev.eval_refined(l1, l2);
  CHECK_FALSE(v.exact_zero);
  const double alpha = spec.alpha->to_double();
  CHECK(v.abs < 1e-8);
  CHECK(v.abs == doctest::Approx(std::abs(-501.0 + 50.0 * alpha + 0.5)).epsilon(1e-3));
}

TEST_CASE("scan on the sqrt2 torus is Roumieu-consistent") {
  const auto spec = torus_pair(ExactScalar::alpha_multiple(1), ContinuedFraction::sqrt2());
  AssociatedFunction af(WeightSequence::gevrey(2.0));
  const auto an = analyze_operator(spec, {2000, 2000}, af, FitMode::kRoumieu, default_n_grid(), {2.0});
  CHECK(an.komatsu.condition_consistent);
  CHECK(an.komatsu.witnesses.empty());
  CHECK(an.komatsu.census.count == 1);  // the constant mode
  REQUIRE(an.smooth);
  CHECK(an.smooth->condition_consistent);
}

TEST_CASE("scan on a Liouville slope finds Roumieu witnesses") {
  const auto spec = torus_pair(ExactScalar::alpha_multiple(1), ContinuedFraction::from_pattern("liouville"));
  AssociatedFunction af(WeightSequence::gevrey(2.0));
  const auto an = analyze_operator(spec, {100, 10000}, af, FitMode::kRoumieu, default_n_grid());
  CHECK_FALSE(an.komatsu.roumieu_consistent);
  CHECK_FALSE(an.komatsu.witnesses.empty());
  REQUIRE(an.komatsu.worst_fit);
  for (const auto& w : an.komatsu.witnesses) CHECK(w.freq.eta.k[0] % 100 == 0);
}

TEST_CASE("record spectrum and parallel scan agree") {
  const auto spec = torus_pair(ExactScalar::alpha_multiple(1), ContinuedFraction::golden());
  AssociatedFunction af(WeightSequence::gevrey(1.5));
  const auto pens = associated_penalties(af, {0.5, 1.0});
  const auto a = scan_spectrum(spec, {60, 60}, pens, 256, 4);
  const auto b = accumulate_records(divisor_spectrum(spec, {60, 60}), pens);
  REQUIRE(a.bin_min.size() == b.bin_min.size());
  for (std::size_t p = 0; p < a.bin_min.size(); ++p)
    for (std::size_t i = 0; i < a.bin_min[p].size(); ++i) {
      if (std::isinf(a.bin_min[p][i]) || std::isinf(b.bin_min[p][i])) {
        CHECK(a.bin_min[p][i] == b.bin_min[p][i]);
      } else {
        CHECK(a.bin_min[p][i] == doctest::Approx(b.bin_min[p][i]).epsilon(1e-12));
      }
    }
}

TEST_CASE("alpha referenced without a value is rejected") {
  VectorFieldSpec spec;
  spec.a = ExactScalar::alpha_multiple(1);
  CHECK_THROWS_AS(spec.validate(), Error);
}
