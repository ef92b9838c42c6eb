/*
 * Copyright 2026 The stpa-rec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "stpa/errors.hpp"
#include "stpa/meadow.hpp"
#include "stpa/meadow_laws.hpp"

using stpa::Scalar;
using oracle::Q;

TEST_CASE("inverse is totalized") {
  CHECK(stpa::inv(Scalar(0)) == Scalar(0));
  CHECK(stpa::inv(Scalar(1)) == Scalar(1));
  Scalar r = stpa::inv(Scalar(-4));
  CHECK(r == Scalar(-1, 4));
  CHECK(Scalar(-4) * (Scalar(-4) * r) == Scalar(-4));
  CHECK(Scalar(5) / Scalar(0) == Scalar(0));
}

TEST_CASE("signum") {
  CHECK(stpa::signum(Scalar(-1)) == Scalar(-1));
  CHECK(stpa::signum(Scalar(0)) == Scalar(0));
  CHECK(stpa::signum(Scalar(7, 2)) == Scalar(1));
}

TEST_CASE("square root") {
  CHECK(stpa::sqrt_total(Scalar(4)) == Scalar(2));
  CHECK(stpa::sqrt_total(Scalar(0)) == Scalar(0));
  CHECK(stpa::sqrt_total(Scalar(-9)) == Scalar(-3));
  CHECK(stpa::sqrt_total(Scalar(9, 49)) == Scalar(3, 7));
  CHECK_THROWS_AS(stpa::sqrt_total(Scalar(2)), stpa::NotRepresentable);
  CHECK_FALSE(stpa::try_sqrt_total(Scalar(1, 2)).has_value());
}

TEST_CASE("order predicates and min/max") {
  CHECK(stpa::lt(Scalar(1), Scalar(2)));
  CHECK_FALSE(stpa::lt(Scalar(2), Scalar(2)));
  CHECK(stpa::le(Scalar(3), Scalar(3)));
  CHECK(stpa::min2(Scalar(5), Scalar(2)) == Scalar(2));
  CHECK(stpa::max2(Scalar(5), Scalar(2)) == Scalar(5));
}

TEST_CASE("distance") {
  stpa::Point o{0, 0, 0};
  CHECK(stpa::dist(o, o) == Scalar(0));
  CHECK(stpa::dist(o, stpa::Point{3, 4, 0}) == Scalar(5));
  CHECK_THROWS_AS(stpa::dist(o, stpa::Point{1, 1, 0}), stpa::NotRepresentable);
  CHECK(stpa::dist_squared(o, stpa::Point{1, 1, 0}) == Scalar(2));
}

TEST_CASE("parse and print") {
  CHECK(Scalar::Parse("-6/4").str() == "-3/2");
  CHECK(Scalar::Parse("0/5") == Scalar(0));
  CHECK_THROWS_AS(Scalar::Parse("1/0"), stpa::SyntaxError);
  CHECK_THROWS_AS(Scalar::Parse("x"), stpa::SyntaxError);
}

TEST_CASE("arithmetic agrees with an independent rational type") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3000; ++i) {
    Scalar a = stpa::RandomScalar(rng);
    Scalar b = stpa::RandomScalar(rng);
    Q qa = oracle::ToQ(a), qb = oracle::ToQ(b);
    REQUIRE(oracle::Same(a + b, qa + qb));
    REQUIRE(oracle::Same(a - b, qa - qb));
    REQUIRE(oracle::Same(a * b, qa * qb));
    REQUIRE(oracle::Same(a / b, qa * oracle::Inv(qb)));
    REQUIRE(oracle::Same(stpa::inv(a), oracle::Inv(qa)));
    REQUIRE(stpa::signum(a) == Scalar(oracle::Sign(qa)));
    REQUIRE(stpa::lt(a, b) == (qa < qb));
    REQUIRE((a < b) == (qa < qb));
    REQUIRE(a.hash() == Scalar::Parse(a.str()).hash());
    Scalar sq = a * a;
    auto root = oracle::Sqrt(oracle::ToQ(sq));
    REQUIRE(root.has_value());
    REQUIRE(oracle::Same(stpa::sqrt_total(sq), *root));
  }
}

TEST_CASE("large values leave the inline form and come back") {
  Scalar big(1LL << 62);
  Scalar prod = big * big * big;
  Q q = oracle::ToQ(big);
  CHECK(oracle::Same(prod, q * q * q));
  CHECK(prod / (big * big) == big);
  CHECK((prod - prod).is_zero());
}

TEST_CASE("self test reports every law") {
  auto reports = stpa::MeadowSelfTest(200, 3);
  CHECK(reports.size() >= 22);
  for (const auto& r : reports) {
    CAPTURE(r.name);
    CHECK(r.checked == 200);
    CHECK(r.failed == 0);
  }
}
