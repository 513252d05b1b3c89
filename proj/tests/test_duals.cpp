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
#include "komatsu/duals.hpp"
#include "komatsu/error.hpp"

using namespace komatsu;

TEST_CASE("torus dual of T1 within a weight") {
  const auto reps = enumerate_dual(GroupTag::torus(1), std::sqrt(1.0 + 9.0));
  CHECK(reps.size() == 7);  // k = -3..3
  CHECK(reps.front().k[0] == 0);
}

TEST_CASE("SU2 dual lists half-integer spins in weight order") {
  const auto reps = enumerate_dual(GroupTag::su2(), std::sqrt(1.0 + 2.0 * 3.0));
  REQUIRE(reps.size() == 5);  // l = 0, 1/2, 1, 3/2, 2
  for (std::size_t i = 0; i < reps.size(); ++i) CHECK(reps[i].two_l == static_cast<std::int64_t>(i));
  CHECK(reps[3].dim() == 4);
  CHECK(reps[2].weight() == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("dimension bound on SU2 is attained near one") {
  const auto reps = enumerate_dual(GroupTag::su2(), 50.0);
  const double c = dimension_bound_check(reps, 3);
  CHECK(c >= 1.0);
  CHECK(c <= 2.0);
}

TEST_CASE("flatten and unflatten are inverse") {
  for (std::int64_t m = 1; m <= 3; ++m)
    for (std::int64_t n = 1; n <= 3; ++n)
      for (std::int64_t r = 1; r <= 2; ++r)
        for (std::int64_t s = 1; s <= 2; ++s) {
          const auto f = flatten(m, n, r, s, 3, 2);
          CHECK(f.i == 2 * (m - 1) + r);
          CHECK(f.j == 2 * (n - 1) + s);
          CHECK(unflatten(f, 3, 2) == BlockIndices{m, n, r, s});
        }
  CHECK_THROWS_AS(flatten(4, 1, 1, 1, 3, 2), Error);
}

TEST_CASE("group names parse and round-trip") {
  CHECK(GroupTag::parse("SU2") == GroupTag::su2());
  CHECK(GroupTag::parse("T1") == GroupTag::torus(1));
  CHECK(GroupTag::parse(GroupTag::torus(2).name()) == GroupTag::torus(2));
  CHECK_THROWS_AS(GroupTag::parse("SO5"), Error);
}
