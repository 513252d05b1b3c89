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
#include "komatsu/diophantine.hpp"
#include "komatsu/error.hpp"

using namespace komatsu;

TEST_CASE("golden ratio convergents are Fibonacci ratios") {
  const auto conv = convergents(ContinuedFraction::golden(), 10);
  // p_n = F_{n+2}, q_n = F_{n+1}
  mpz_class f1 = 1, f2 = 1;
  for (const auto& [p, q] : conv) {
    CHECK(q == f1);
    CHECK(p == f2);
    const mpz_class next = f1 + f2;
    f1 = f2;
    f2 = next;
  }
  CHECK(conv[9].first == 89);
  CHECK(conv[9].second == 55);
}

TEST_CASE("sqrt2 convergents satisfy the Pell relation") {
  const auto conv = convergents(ContinuedFraction::sqrt2(), 12);
  for (const auto& [p, q] : conv) {
    const mpz_class d = p * p - 2 * q * q;
    CHECK((d == 1 || d == -1));
  }
}

TEST_CASE("profile of an irrational brackets every gap") {
  const auto prof = approximation_profile(ContinuedFraction::sqrt2(), 8);
  REQUIRE(prof.records.size() == 9);
  for (const auto& r : prof.records) CHECK(r.bracket_ok);
  CHECK(prof.coprime_ok);
  CHECK(prof.alternation_ok);
  CHECK_FALSE(prof.liouville_consistent);
}

TEST_CASE("the factorial power-of-ten number looks Liouville") {
  const auto prof = approximation_profile(ContinuedFraction::factorial_pow10(), 3);
  CHECK(prof.liouville_consistent);
  CHECK(prof.max_power_exponent > 4.0);
}

TEST_CASE("terminating fractions are reported as rational") {
  const auto prof = approximation_profile(ContinuedFraction::finite({1, 2, 3}), 2);
  CHECK(prof.rational);
  CHECK(prof.records.empty());
}

TEST_CASE("pattern names parse") {
  CHECK(ContinuedFraction::from_pattern("sqrt2").to_double() == doctest::Approx(std::sqrt(2.0)));
  CHECK(ContinuedFraction::from_pattern("golden").to_double() == doctest::Approx((1 + std::sqrt(5.0)) / 2));
  CHECK(ContinuedFraction::from_pattern("factorial-pow10").to_double() == doctest::Approx(10.01));
  CHECK_THROWS_AS(ContinuedFraction::from_pattern("pi"), Error);
}

TEST_CASE("profile depth and precision are validated") {
  CHECK_THROWS_AS(approximation_profile(ContinuedFraction::sqrt2(), 1), Error);
}
