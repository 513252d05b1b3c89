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

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "doctest.h"
#include "komatsu/error.hpp"
#include "komatsu/field_io.hpp"
#include "komatsu/spec_io.hpp"

using namespace komatsu;
using nlohmann::json;

TEST_CASE("field CSV round-trips bit for bit") {
  std::mt19937_64 rng(17);
  const auto c = random_field(GroupTag::torus(1), GroupTag::su2(), {2, 2}, rng);
  std::stringstream ss;
  write_field_csv(c, ss);
  const auto back = read_field_csv(ss, GroupTag::torus(1), GroupTag::su2(), c.band());
  CHECK((back - c).max_abs() == 0.0);
}

TEST_CASE("field CSV infers the band and skips zeros") {
  CoefficientField c(GroupTag::torus(1), GroupTag::su2(), {3, 2});
  c.block(RepIndex::torus1(-2), RepIndex::su2(3)).at(1, 1, 4, 2) = cplx(0.5, -1.0);
  std::stringstream ss;
  write_field_csv(c, ss);
  std::string header, row, extra;
  std::getline(ss, header);
  std::getline(ss, row);
  CHECK(header == "k,l,m,n,r,s,re,im");
  CHECK_FALSE(std::getline(ss, extra));
  std::stringstream again;
  write_field_csv(c, again);
  const auto back = read_field_csv(again, GroupTag::torus(1), GroupTag::su2());
  CHECK(back.band().cut1 == 2);
  CHECK(back.band().cut2 == 2);
  CHECK(back.block(RepIndex::torus1(-2), RepIndex::su2(3)).at(1, 1, 4, 2) == cplx(0.5, -1.0));
}

TEST_CASE("malformed CSV rows are rejected") {
  std::stringstream ss("k,l,m,n,r,s,re,im\n0,0,1,1,1,1,abc,0\n");
  CHECK_THROWS_AS(read_field_csv(ss, GroupTag::torus(1), GroupTag::trivial()), Error);
}

TEST_CASE("save and load keep groups through the manifest") {
  std::mt19937_64 rng(2);
  const auto c = random_field(GroupTag::torus(1), GroupTag::torus(1), {3, 1}, rng);
  const auto path = (std::filesystem::temp_directory_path() / "komatsu_io_test.csv").string();
  save_field(c, path);
  const auto back = load_field(path);
  CHECK(back.group2() == GroupTag::torus(1));
  CHECK((back - c).max_abs() == 0.0);
  const auto manifest = field_manifest(c);
  CHECK(manifest["schema"] == "komatsu.field/1");
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".json");
}

TEST_CASE("sequence JSON kinds") {
  const auto g = parse_sequence(json::parse(R"({"kind": "gevrey", "s": 2})"));
  CHECK(g.kind() == WeightKind::kGevrey);
  CHECK(g.gevrey_order() == 2.0);
  const auto t = parse_sequence(json::parse(R"({"kind": "table", "values": [1, 1, 2, 6, 24, 120, 720, 5040]})"));
  CHECK(t.kind() == WeightKind::kUserTable);
  CHECK(t.log_m(4) == doctest::Approx(std::log(24.0)));
  CHECK_THROWS_AS(parse_sequence(json::parse(R"({"kind": "gevrey"})")), Error);
  CHECK_THROWS_AS(parse_sequence(json::parse(R"({"kind": "spline"})")), Error);
}

TEST_CASE("operator JSON resolves alpha and shifts") {
  const auto spec = parse_operator(json::parse(R"({
    "x1": {"group": "T1", "coef": "1"},
    "x2": {"group": "SU2", "coef": "1"},
    "alpha": {"pattern": "factorial-pow10"},
    "a": "alpha",
    "q": "1/2 i"})"));
  CHECK(spec.x2.group == GroupTag::su2());
  CHECK(spec.a.re_alpha == 1);
  CHECK(spec.q.im0 == mpq_class(1, 2));
  CHECK(spec.alpha_double() == doctest::Approx(10.01));
  const auto again = parse_operator(operator_to_json(spec));
  CHECK(again.q.im0 == spec.q.im0);
  CHECK(again.a.re_alpha == 1);
}

TEST_CASE("a continued fraction given directly as the coefficient") {
  const auto spec = parse_operator(json::parse(R"({
    "x1": {"group": "T1", "coef": "1"}, "x2": {"group": "T1", "coef": "1"},
    "a": {"pattern": "sqrt2"}})"));
  REQUIRE(spec.alpha);
  CHECK(spec.alpha_double() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("operator JSON errors") {
  CHECK_THROWS_AS(parse_operator(json::parse(R"({"x1": {"group": "SO3", "coef": "1"}})")), Error);
  CHECK_THROWS_AS(parse_operator(json::parse(R"({"x1": {"group": "T1", "coef": "1"}, "a": "alpha"})")), Error);
  CHECK_THROWS_AS(read_json_file("/nonexistent/op.json"), Error);
}

TEST_CASE("doubles print with round-trip precision") {
  const double x = 0.1 + 0.2;
  CHECK(std::stod(format_double(x)) == x);
}
