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
#include "komatsu/perturbation.hpp"
#include "komatsu/s3_example.hpp"

using namespace komatsu;

TEST_CASE("mean of the potential is snapped to an exact shift") {
  const auto prob = reduce(s3_potential(cplx(0.0, 0.5)), s3_operator());
  CHECK(prob.q0_exact);
  CHECK(prob.shifted.q.im0 == mpq_class(1, 2));
  REQUIRE(prob.primitive);
  CHECK(prob.primitive_residual < 1e-13);
  // The primitive is sin t + tr / alpha.
  CHECK((*prob.primitive - s3_primitive(s3_operator().alpha_double()).rebanded(prob.primitive->band())).max_abs() <
        1e-14);
}

TEST_CASE("an alpha multiple mean is recognised") {
  const double alpha = s3_operator().alpha_double();
  const auto prob = reduce(s3_potential(cplx(0.0, alpha)), s3_operator());
  CHECK(prob.q0_exact);
  CHECK(prob.shifted.q.im_alpha == 1);
}

TEST_CASE("a mismatching declared mean is rejected") {
  CHECK_THROWS_AS(reduce(s3_potential(cplx(0.0, 0.5)), s3_operator(), ExactScalar::parse("1/3 i")), Error);
}

TEST_CASE("potential with kernel content has no primitive") {
  VectorFieldSpec x;
  x.x1 = {GroupTag::torus(1), 1};
  x.x2 = {GroupTag::torus(1), 1};
  x.a = ExactScalar::rational(1);
  CoefficientField q(GroupTag::torus(1), GroupTag::torus(1), {2, 2});
  q.block(RepIndex::torus1(1), RepIndex::torus1(-1)).at(1, 1) = 1.0;  // D = 1 - 1 = 0
  const auto prob = reduce(q, x);
  CHECK_FALSE(prob.primitive);
  CHECK_FALSE(prob.admissibility.admissible);
  CHECK_THROWS_AS(conjugation_residual(prob, q), Error);
}

TEST_CASE("exp of a torus function matches the Bessel expansion") {
  // e^{cos t} = I_0(1) + 2 sum I_k(1) cos(k t)
  const auto c = analyze([](const ProductPoint& p) { return cplx(std::cos(p.x1.t)); }, GroupTag::torus(1),
                         GroupTag::trivial(), {1, 0}, {1, 0});
  ExpReport rep;
  const auto e = exp_field_auto(c, &rep);
  CHECK(std::abs(e.block(RepIndex::torus1(0), RepIndex::trivial()).at(1, 1) - std::cyl_bessel_i(0.0, 1.0)) < 1e-14);
  CHECK(std::abs(e.block(RepIndex::torus1(3), RepIndex::trivial()).at(1, 1) - std::cyl_bessel_i(3.0, 1.0)) < 1e-14);
  CHECK(rep.outer_shell <= 1e-15 * e.max_abs());
}

TEST_CASE("exp(Q) exp(-Q) = 1") {
  const auto prob = reduce(s3_potential(cplx(0.0, 0.5)), s3_operator());
  CoefficientField neg = *prob.primitive;
  neg *= -1.0;
  const auto prod = multiply(exp_field_auto(*prob.primitive), exp_field_auto(neg));
  CoefficientField one(prod.group1(), prod.group2(), prod.band());
  one.block(RepIndex::torus1(0), RepIndex::su2(0)).at(1, 1) = 1.0;
  CHECK((prod - one).max_abs() < 1e-13);
}

TEST_CASE("conjugation identity on random test fields") {
  const auto prob = reduce(s3_potential(cplx(0.0, 0.5)), s3_operator());
  std::mt19937_64 rng(9);
  const ConjugationCheck check(prob, {2, 1});
  for (int i = 0; i < 3; ++i) {
    CHECK(check.residual(random_field(GroupTag::torus(1), GroupTag::su2(), {2, 1}, rng)) < 1e-10);
  }
  CHECK_THROWS_AS(check.residual(random_field(GroupTag::torus(1), GroupTag::su2(), {3, 1}, rng)), Error);
}

TEST_CASE("exponential envelope for sin t") {
  const auto rep = exp_derivative_bound_check([](double t) { return std::sin(t); }, WeightSequence::gevrey(1.0), 1.0);
  CHECK(rep.holds);
  CHECK(rep.k_fit == doctest::Approx(std::exp(1.0)).epsilon(1e-9));  // p = 0: sup e^{sin t}
  CHECK(rep.sup_derivative.size() == 11);
}

TEST_CASE("constant shift analysis flags kernel growth for an alpha i shift") {
  AssociatedFunction af(WeightSequence::gevrey(2.0));
  const auto an = constant_shift_analyze(s3_operator(), ExactScalar::parse("alpha i"), {200, 20}, af,
                                         FitMode::kRoumieu);
  CHECK(an.komatsu.census.count == 20);
  CHECK(an.komatsu.census.still_growing);
}
