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
#include "komatsu/transforms.hpp"

using namespace komatsu;

namespace {

double max_diff(const CoefficientField& a, const CoefficientField& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("Wigner recursion matches the direct sum") {
  for (std::int64_t tl = 0; tl <= 12; ++tl)
    for (std::int64_t tm = -tl; tm <= tl; tm += 2)
      for (std::int64_t tn = -tl; tn <= tl; tn += 2)
        for (double th : {0.1, 1.0, 2.5}) {
          CHECK(wigner_d(tl, tm, tn, th) == doctest::Approx(wigner_d_direct(tl, tm, tn, th)).epsilon(1e-12));
        }
}

TEST_CASE("spin-1/2 small-d in closed form") {
  const double th = 0.7;
  CHECK(wigner_d(1, 1, 1, th) == doctest::Approx(std::cos(th / 2)));
  CHECK(wigner_d(1, 1, -1, th) == doctest::Approx(-std::sin(th / 2)));
  CHECK(wigner_d(1, -1, 1, th) == doctest::Approx(std::sin(th / 2)));
}

TEST_CASE("SU2 representations are unitary at a point") {
  FactorPoint p{0.0, 0.4, 1.1, 2.3};
  for (std::int64_t tl : {1, 2, 5}) {
    const RepIndex rep = RepIndex::su2(tl);
    for (std::int64_t a = 1; a <= rep.dim(); ++a)
      for (std::int64_t b = 1; b <= rep.dim(); ++b) {
        cplx s = 0.0;
        for (std::int64_t c = 1; c <= rep.dim(); ++c) s += rep_entry(rep, a, c, p) * std::conj(rep_entry(rep, b, c, p));
        CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-12);
      }
  }
}

TEST_CASE("synthesis then analysis is the identity on a band") {
  std::mt19937_64 rng(11);
  for (auto [g1, g2, band] : {std::tuple{GroupTag::torus(1), GroupTag::su2(), Truncation{3, 2}},
                              std::tuple{GroupTag::torus(1), GroupTag::torus(1), Truncation{5, 4}},
                              std::tuple{GroupTag::trivial(), GroupTag::su2(), Truncation{0, 3}}}) {
    const auto c = random_field(g1, g2, band, rng);
    const auto grid = grid_for(g1, g2, band, band);
    const auto back = analyze_grid(synthesize_grid(c, grid), grid, g1, g2, band);
    CHECK(max_diff(c, back) < 1e-12);
  }
}

TEST_CASE("grid synthesis agrees with pointwise synthesis") {
  std::mt19937_64 rng(3);
  const auto c = random_field(GroupTag::torus(1), GroupTag::su2(), {2, 1}, rng);
  const auto grid = grid_for(GroupTag::torus(1), GroupTag::su2(), {2, 1}, {2, 1});
  const auto vals = synthesize_grid(c, grid);
  for (std::size_t i = 0; i < vals.size(); i += 97) CHECK(std::abs(vals[i] - synthesize(c, grid.point(i))) < 1e-12);
}

TEST_CASE("analysis of the character of spin 1/2 is the identity block") {
  // tr(x) = 2 cos(theta/2) cos((phi + psi)/2) has F = I / 2 at l = 1/2.
  const auto c = analyze(
      [](const ProductPoint& p) { return cplx(2.0 * std::cos(p.x2.theta / 2) * std::cos((p.x2.phi + p.x2.psi) / 2)); },
      GroupTag::trivial(), GroupTag::su2(), {0, 2}, {0, 1});
  const Block& b = c.block(RepIndex::trivial(), RepIndex::su2(1));
  CHECK(std::abs(b.at(1, 1) - 0.5) < 1e-13);
  CHECK(std::abs(b.at(2, 2) - 0.5) < 1e-13);
  CHECK(std::abs(b.at(1, 2)) < 1e-13);
  CHECK(c.nonzero_count(1e-13) == 2);
}

TEST_CASE("Plancherel: norm of coefficients equals the L2 norm") {
  std::mt19937_64 rng(5);
  const auto c = random_field(GroupTag::torus(1), GroupTag::su2(), {2, 1}, rng);
  const auto grid = grid_for(GroupTag::torus(1), GroupTag::su2(), {2, 1}, {2, 1});
  const auto vals = synthesize_grid(c, grid);
  double l2 = 0.0;
  for (std::size_t i2 = 0; i2 < grid.f2.size(); ++i2) {
    const auto it = static_cast<std::size_t>(i2 / (grid.f2.nphi * grid.f2.npsi));
    const double w = 0.5 * grid.f2.gl_weight[it] / (grid.f2.nphi * grid.f2.npsi) / grid.f1.nt;
    for (std::size_t i1 = 0; i1 < grid.f1.size(); ++i1) l2 += w * std::norm(vals[i2 * grid.f1.size() + i1]);
  }
  CHECK(std::sqrt(l2) == doctest::Approx(plancherel_norm(c)).epsilon(1e-12));
}

TEST_CASE("multiply is exact for band-limited factors") {
  auto cos_t = analyze([](const ProductPoint& p) { return cplx(std::cos(p.x1.t)); }, GroupTag::torus(1),
                       GroupTag::trivial(), {1, 0}, {1, 0});
  const auto sq = multiply(cos_t, cos_t);
  // cos^2 = 1/2 + cos(2t)/2
  CHECK(std::abs(sq.block(RepIndex::torus1(0), RepIndex::trivial()).at(1, 1) - 0.5) < 1e-14);
  CHECK(std::abs(sq.block(RepIndex::torus1(2), RepIndex::trivial()).at(1, 1) - 0.25) < 1e-14);
  CHECK(std::abs(sq.block(RepIndex::torus1(-2), RepIndex::trivial()).at(1, 1) - 0.25) < 1e-14);
}

TEST_CASE("undersampled analysis raises the aliasing warning") {
  AnalysisReport rep;
  const auto small = grid_for(GroupTag::torus(1), GroupTag::trivial(), {1, 0}, {1, 0});
  analyze([](const ProductPoint& p) { return cplx(std::cos(5 * p.x1.t)); }, GroupTag::torus(1), GroupTag::trivial(),
          {1, 0}, {5, 0}, &rep, &small);
  CHECK(rep.aliasing_warning);
  AnalysisReport ok;
  analyze([](const ProductPoint& p) { return cplx(std::cos(5 * p.x1.t)); }, GroupTag::torus(1), GroupTag::trivial(),
          {1, 0}, {5, 0}, &ok);
  CHECK_FALSE(ok.aliasing_warning);
}

TEST_CASE("class cut and rebanding") {
  CHECK(class_cut(RepIndex::su2(3)) == 2);
  CHECK(class_cut(RepIndex::torus1(-4)) == 4);
  std::mt19937_64 rng(1);
  const auto c = random_field(GroupTag::torus(1), GroupTag::torus(1), {3, 3}, rng);
  const auto r = c.rebanded({1, 1});
  CHECK(r.blocks().size() == 9);
  CHECK(r.block(RepIndex::torus1(1), RepIndex::torus1(-1)).at(1, 1) ==
        c.block(RepIndex::torus1(1), RepIndex::torus1(-1)).at(1, 1));
}
