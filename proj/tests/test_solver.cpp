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
#include <random>

#include "doctest.h"
#include "komatsu/error.hpp"
#include "komatsu/s3_example.hpp"
#include "komatsu/solver.hpp"

using namespace komatsu;

namespace {

VectorFieldSpec torus_pair(const ExactScalar& a, std::optional<ContinuedFraction> alpha = std::nullopt) {
  VectorFieldSpec spec;
  spec.x1 = {GroupTag::torus(1), 1};
  spec.x2 = {GroupTag::torus(1), 1};
  spec.a = a;
  spec.alpha = std::move(alpha);
  return spec;
}

// f = exp(-M(n w)) on every entry of a band.
CoefficientField decaying(const GroupTag& g1, const GroupTag& g2, const Truncation& band,
                          const AssociatedFunction& af, double n) {
  CoefficientField f(g1, g2, band);
  for (auto& [key, blk] : f.blocks()) {
    const double w = key.first.weight() + key.second.weight();
    for (auto& x : blk.a) x = std::exp(-associated_value(af, n * w));
  }
  return f;
}

}  // namespace

TEST_CASE("apply multiplies by i D") {
  const auto spec = torus_pair(ExactScalar::alpha_multiple(1), ContinuedFraction::sqrt2());
  CoefficientField u(GroupTag::torus(1), GroupTag::torus(1), {3, 3});
  u.block(RepIndex::torus1(2), RepIndex::torus1(-1)).at(1, 1) = 1.0;
  const auto lu = apply(spec, u);
  const cplx got = lu.block(RepIndex::torus1(2), RepIndex::torus1(-1)).at(1, 1);
  CHECK(std::abs(got - cplx(0.0, 2.0 - std::sqrt(2.0))) < 1e-14);
}

TEST_CASE("kernel entries make a field inadmissible") {
  const auto spec = torus_pair(ExactScalar::rational(2));
  CoefficientField f(GroupTag::torus(1), GroupTag::torus(1), {4, 2});
  f.block(RepIndex::torus1(-2), RepIndex::torus1(1)).at(1, 1) = 1.0;
  const auto rep = check_admissible(f, spec);
  CHECK_FALSE(rep.admissible);
  REQUIRE(rep.offending.size() == 1);
  CHECK(rep.offending[0].freq.xi == RepIndex::torus1(-2));
  CHECK_THROWS_AS(solve(f, spec), Error);
  const auto projected = project_off_kernel(f, spec);
  CHECK(check_admissible(projected, spec).admissible);
  CHECK(projected.max_abs() == 0.0);
}

TEST_CASE("solve inverts apply off the kernel") {
  std::mt19937_64 rng(42);
  VectorFieldSpec s3 = s3_operator();
  s3.q = ExactScalar::parse("1/2 i");
  const auto f = random_field(GroupTag::torus(1), GroupTag::su2(), {3, 2}, rng);
  const auto u = solve(f, s3);
  CHECK((apply(s3, u) - f).max_abs() < 1e-13 * f.max_abs());
  // The solution has no kernel component: solving Lu again returns u.
  CHECK((solve(apply(s3, u), s3) - u).max_abs() < 1e-12 * u.max_abs());
}

TEST_CASE("group mismatch is reported") {
  const auto spec = torus_pair(ExactScalar::rational(1));
  CoefficientField f(GroupTag::torus(1), GroupTag::su2(), {2, 1});
  CHECK_THROWS_AS(solve(f, spec), Error);
}

TEST_CASE("classifier recognises Roumieu decay") {
  AssociatedFunction af(WeightSequence::gevrey(2.0));
  const auto f = decaying(GroupTag::torus(1), GroupTag::torus(1), {30, 30}, af, 2.0);
  const auto v = classify_decay(f, af);
  CHECK(v.label == "roumieu-function");
  REQUIRE(v.fitted_n);
  CHECK(*v.fitted_n == doctest::Approx(2.0));
  // Fixed polynomial orders up to 16 still outgrow exp(-M(2w)) on this
  // band, so "smooth" is not asserted here.
  CHECK(v.lattice_consistent);
}

TEST_CASE("classifier recognises polynomial growth as finite order") {
  AssociatedFunction af(WeightSequence::gevrey(2.0));
  CoefficientField f(GroupTag::torus(1), GroupTag::torus(1), {30, 30});
  for (auto& [key, blk] : f.blocks()) blk.a[0] = std::pow(key.first.weight() + key.second.weight(), 3.0);
  const auto v = classify_decay(f, af);
  CHECK(v.label == "distribution-finite-order");
  CHECK_FALSE(v.smooth);
  REQUIRE(v.fitted_order);
  CHECK(*v.fitted_order == doctest::Approx(4.0));
}

TEST_CASE("classifier needs enough coefficients and span") {
  AssociatedFunction af(WeightSequence::gevrey(2.0));
  CoefficientField f(GroupTag::torus(1), GroupTag::torus(1), {2, 2});
  for (auto& [key, blk] : f.blocks()) blk.a[0] = 1.0;
  CHECK_THROWS_AS(classify_decay(f, af), Error);
}

TEST_CASE("adversarial hypo-roumieu case has |u| = w at the witnesses") {
  const auto spec = torus_pair(ExactScalar::alpha_multiple(1), ContinuedFraction::from_pattern("liouville"));
  AssociatedFunction af(WeightSequence::gevrey(2.0));
  const Truncation trunc{100, 10000};
  const auto an = analyze_operator(spec, trunc, af, FitMode::kRoumieu, default_n_grid());
  const auto adv = adversarial_field(spec, trunc, af, AdversarialMode::kHypoRoumieu, an.komatsu);
  REQUIRE_FALSE(adv.witnesses.empty());
  for (const auto& w : adv.witnesses) {
    const cplx u = adv.u.block(w.freq.xi, w.freq.eta).at(1, 1);
    CHECK(std::abs(u) == doctest::Approx(w.w));
  }
  // f = L u entrywise.
  CHECK((apply(spec, adv.u) - adv.f).max_abs() <= 1e-12 * adv.f.max_abs());
}

TEST_CASE("adversarial construction needs witnesses") {
  const auto spec = torus_pair(ExactScalar::alpha_multiple(1), ContinuedFraction::sqrt2());
  AssociatedFunction af(WeightSequence::gevrey(2.0));
  const auto an = analyze_operator(spec, {200, 200}, af, FitMode::kRoumieu, default_n_grid());
  CHECK_THROWS_AS(adversarial_field(spec, {200, 200}, af, AdversarialMode::kSolvRoumieu, an.komatsu), Error);
}

TEST_CASE("adversarial mode names round-trip") {
  for (auto m : {AdversarialMode::kHypoRoumieu, AdversarialMode::kSolvRoumieu, AdversarialMode::kHypoBeurling}) {
    CHECK(parse_adversarial_mode(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_adversarial_mode("nonsense"), Error);
}
