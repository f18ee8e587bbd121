// Copyright 2026 The Coxdec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coxdec/families.hpp"
#include "coxdec/geometry.hpp"
#include "doctest.h"

using namespace coxdec;

namespace {

std::string rec(const DecoratedSimplex& d) {
  auto t = recognize_connected(d);
  return t ? type_name(*t) : "?";
}

DecoratedSimplex path(const std::vector<int>& labels) {
  DecoratedSimplex d(static_cast<int>(labels.size()));
  for (size_t i = 0; i < labels.size(); ++i)
    d.set_angle(static_cast<int>(i), static_cast<int>(i) + 1, Angle(1, labels[i]));
  return d;
}

DecoratedSimplex cycle(const std::vector<int>& labels) {
  int k = static_cast<int>(labels.size());
  DecoratedSimplex d(k - 1);
  for (int i = 0; i < k; ++i) d.set_angle(i, (i + 1) % k, Angle(1, labels[i]));
  return d;
}

}  // namespace

TEST_CASE("recognition of finite families") {
  CHECK(rec(path({3, 3, 3})) == "A4");
  CHECK(rec(path({4, 3, 3})) == "B4");
  CHECK(rec(path({3, 4, 3})) == "F4");
  CHECK(rec(path({5, 3, 3})) == "H4");
  CHECK(rec(path({5, 3})) == "H3");
  CHECK(rec(path({5})) == "I2(5)");
  CHECK(rec(path({4})) == "B2");
  CHECK(rec(path({6})) == "G2");
  CHECK(rec(make_simplex(3, {{0, 3, 3}, {1, 3, 3}, {2, 3, 3}})) == "D4");
  CHECK(rec(make_simplex(4, {{0, 2, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}})) == "D5");
  // E6/E7/E8 as spiders with arm lengths (1,2,2), (1,2,3), (1,2,4)
  CHECK(rec(make_simplex(5, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {2, 5, 3}})) == "E6");
  CHECK(rec(make_simplex(6, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {2, 6, 3}})) == "E7");
  CHECK(rec(make_simplex(7, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {2, 7, 3}})) == "E8");
}

TEST_CASE("recognition of affine families") {
  CHECK(rec(cycle({3, 3, 3})) == "~A2");
  CHECK(rec(cycle({3, 3, 3, 3, 3})) == "~A4");
  CHECK(rec(path({4, 4})) == "~C2");
  CHECK(rec(path({4, 3, 4})) == "~C3");
  CHECK(rec(path({4, 3, 3, 4})) == "~C4");
  CHECK(rec(path({3, 3, 4, 3})) == "~F4");
  CHECK(rec(path({3, 6})) == "~G2");
  CHECK(rec(make_simplex(3, {{0, 2, 3}, {1, 2, 3}, {2, 3, 4}})) == "~B3");
  CHECK(rec(make_simplex(4, {{0, 2, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 4}})) == "~B4");
  CHECK(rec(make_simplex(4, {{0, 4, 3}, {1, 4, 3}, {2, 4, 3}, {3, 4, 3}})) == "~D4");
  CHECK(rec(make_simplex(5,
                         {{0, 2, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {3, 5, 3}})) == "~D5");
  // ~E6 spider(2,2,2), ~E7 spider(1,3,3), ~E8 spider(1,2,5)
  CHECK(rec(make_simplex(6, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {2, 5, 3}, {5, 6, 3}})) == "~E6");
  CHECK(rec(make_simplex(7, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {3, 7, 3}})) == "~E7");
  CHECK(rec(make_simplex(8, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {6, 7, 3}, {2, 8, 3}})) == "~E8");
}

TEST_CASE("recognition refuses hyperbolic and decorated diagrams") {
  CHECK(rec(path({5, 3, 3, 3})) == "?");
  CHECK(rec(path({3, 4, 3, 4})) == "?");
  DecoratedSimplex dec(1);
  dec.set_angle(0, 1, Angle(2, 3));
  CHECK(rec(dec) == "?");
}

TEST_CASE("recognized types agree with the signature") {
  std::vector<DecoratedSimplex> finite = {
      path({3, 3, 3}), path({4, 3, 3, 3}), path({3, 4, 3}), path({5, 3, 3}),
      make_simplex(4, {{0, 2, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}})};
  for (const auto& d : finite) {
    CHECK(classify(d).elliptic());
    auto t = recognize_connected(d);
    REQUIRE(t.has_value());
    CHECK(!is_affine(*t));
  }
  std::vector<DecoratedSimplex> affine = {
      cycle({3, 3, 3, 3}), path({4, 3, 4}), path({3, 3, 4, 3}),
      make_simplex(4, {{0, 4, 3}, {1, 4, 3}, {2, 4, 3}, {3, 4, 3}})};
  for (const auto& d : affine) {
    GeometryKind k = classify(d);
    CHECK(k.parabolic());
    CHECK(k.corank == 1);
    auto t = recognize_connected(d);
    REQUIRE(t.has_value());
    CHECK(is_affine(*t));
  }
}

TEST_CASE("component naming and weyl orders") {
  DecoratedSimplex d(5);
  d.set_angle(0, 1, Angle(1, 3));
  d.set_angle(1, 2, Angle(1, 3));
  d.set_angle(3, 4, Angle(1, 4));
  auto comps = recognize_components(d);
  REQUIRE(comps.has_value());
  CHECK(components_name(*comps) == "A1+A3+B2");
  CHECK(weyl_order_product(*comps) == doctest::Approx(2.0 * 24.0 * 8.0));

  CHECK(weyl_order({Family::H3, 3, 0}) == doctest::Approx(120.0));
  CHECK(weyl_order({Family::H4, 4, 0}) == doctest::Approx(14400.0));
  CHECK(weyl_order({Family::E8, 8, 0}) == doctest::Approx(696729600.0));
  CHECK(weyl_order({Family::D, 4, 0}) == doctest::Approx(192.0));
  CHECK(weyl_order({Family::A, 1, 0}) == doctest::Approx(2.0));
}
