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

#include <random>
#include <set>

#include "coxdec/catalog.hpp"
#include "coxdec/diagram.hpp"
#include "doctest.h"

using namespace coxdec;

namespace {

std::mt19937& rng() {
  static std::mt19937 gen([] {
    const char* s = std::getenv("COXDEC_SEED");
    return s ? static_cast<unsigned>(std::atoi(s)) : 20260808u;
  }());
  return gen;
}

std::vector<int> random_permutation(int k) {
  std::vector<int> p(k);
  for (int i = 0; i < k; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng());
  return p;
}

// Entry encoding that sorts absent edges after present ones, labels
// numerically; must match the order the production canonicalizer minimizes.
std::string flat_key(const DecoratedSimplex& s) {
  int k = s.nodes();
  std::string key;
  char buf[16];
  for (int j = 1; j < k; ++j)
    for (int i = 0; i < j; ++i) {
      const Angle& a = s.angle(i, j);
      if (a.right())
        key += "999.999;";
      else {
        std::snprintf(buf, sizeof buf, "%03d.%03d;", a.den, a.num);
        key += buf;
      }
    }
  return key;
}

// Reference canonicalization: plain minimum over all permutations.
std::string brute_force_key(const DecoratedSimplex& s) {
  int k = s.nodes();
  std::vector<int> p(k);
  for (int i = 0; i < k; ++i) p[i] = i;
  std::string best;
  do {
    std::string key = flat_key(s.permuted(p));
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

}  // namespace

TEST_CASE("angle arithmetic is exact") {
  CHECK(Angle(1, 3) + Angle(2, 3) == Angle(1, 1));
  CHECK(Angle(1, 4) + Angle(1, 4) == kRightAngle);
  CHECK(Angle(2, 4) == kRightAngle);
  CHECK(Angle(1, 6) + Angle(1, 3) == kRightAngle);
  CHECK(Angle(1, 3) < Angle(1, 2));
}

TEST_CASE("parse: defaults, plain and decorated edges") {
  DecoratedSimplex s = parse_diagram("dim=4\n");
  CHECK(s.dim() == 4);
  for (int i = 0; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) CHECK(s.angle(i, j) == kRightAngle);

  s = parse_diagram("dim=4\n0-1:3\n");
  CHECK(s.angle(0, 1) == Angle(1, 3));

  s = parse_diagram("dim=4\n0-1:3/2\n");
  CHECK(s.angle(0, 1) == Angle(2, 3));
}

TEST_CASE("parse: error paths") {
  CHECK_THROWS_AS(parse_diagram("0-1:3\n"), ParseError);             // missing header
  CHECK_THROWS_AS(parse_diagram("dim=4\n0~1:3\n"), ParseError);      // malformed
  CHECK_THROWS_AS(parse_diagram("dim=4\n0-1:3/5\n"), ParseError);    // k >= m
  CHECK_THROWS_AS(parse_diagram("dim=4\n0-9:3\n"), ParseError);      // index range
  CHECK_THROWS_AS(parse_diagram("dim=4\n0-0:3\n"), ParseError);      // self edge
  CHECK_THROWS_AS(parse_diagram("dim=4\n0-1:3\n1-0:4\n"), ParseError);  // duplicate
  try {
    parse_diagram("dim=4\n0-1:3\nbogus\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("parse/serialize round-trips on catalog diagrams") {
  for (const auto& e : all_simplices()) {
    DecoratedSimplex once = parse_diagram(e.diagram.serialize());
    DecoratedSimplex twice = parse_diagram(once.serialize());
    CHECK(once == twice);
    CHECK(once.canonical_key() == e.diagram.canonical_key());
  }
}

TEST_CASE("canonical form: permutation invariance and idempotence") {
  for (const auto& e : all_simplices()) {
    auto canon = canonical_form(e.diagram);
    CHECK(canonical_form(canon.diagram).diagram == canon.diagram);
    for (int trial = 0; trial < 8; ++trial) {
      auto perm = random_permutation(e.diagram.nodes());
      DecoratedSimplex shuffled = e.diagram.permuted(perm);
      CHECK(canonical_form(shuffled).diagram == canon.diagram);
    }
  }
}

TEST_CASE("canonical form: all-right simplex is fixed by every permutation") {
  DecoratedSimplex s(5);
  auto canon = canonical_form(s).diagram;
  CHECK(canon == s);
  CHECK(s.canonical_key() == canonical_form(s).diagram.canonical_key());
}

TEST_CASE("canonical form matches the brute-force oracle on small diagrams") {
  for (const auto& e : all_simplices()) {
    if (e.diagram.nodes() > 7) continue;
    CHECK(flat_key(canonical_form(e.diagram).diagram) == brute_force_key(e.diagram));
  }
  // shuffled copies canonicalize to the same oracle minimum
  for (const char* name : {"H8^5", "H12^5", "H3^6"}) {
    const DecoratedSimplex& s = entry(name).diagram;
    for (int trial = 0; trial < 3; ++trial) {
      DecoratedSimplex shuffled = s.permuted(random_permutation(s.nodes()));
      CHECK(flat_key(canonical_form(shuffled).diagram) == brute_force_key(s));
    }
  }
  // a decorated diagram as well
  DecoratedSimplex d(3);
  d.set_angle(0, 1, Angle(2, 3));
  d.set_angle(1, 2, Angle(1, 4));
  d.set_angle(2, 3, Angle(3, 5));
  CHECK(flat_key(canonical_form(d).diagram) == brute_force_key(d));
}

TEST_CASE("remove_node commutes with relabeling") {
  for (const char* name : {"H3^4", "H5^5", "H1^8"}) {
    const DecoratedSimplex& s = entry(name).diagram;
    for (int trial = 0; trial < 5; ++trial) {
      auto perm = random_permutation(s.nodes());
      DecoratedSimplex shuffled = s.permuted(perm);
      for (int v = 0; v < s.nodes(); ++v) {
        CHECK(s.remove_node(v).canonical_key() ==
              shuffled.remove_node(perm[v]).canonical_key());
      }
    }
  }
}

TEST_CASE("remove_node on the all-right simplex and out-of-range error") {
  DecoratedSimplex s(4);
  DecoratedSimplex r = s.remove_node(2);
  CHECK(r.dim() == 3);
  for (int i = 0; i < r.nodes(); ++i)
    for (int j = i + 1; j < r.nodes(); ++j) CHECK(r.angle(i, j).right());
  CHECK_THROWS_AS(s.remove_node(5), std::out_of_range);
}

TEST_CASE("remove_node reproduces the published subdiagrams") {
  // deleting the pendant node of H3^4 leaves the 4-cycle
  const DecoratedSimplex& h34 = entry("H3^4").diagram;
  bool found_a3 = false;
  for (int v = 0; v < h34.nodes(); ++v) {
    auto t = recognize_components(h34.remove_node(v));
    if (t && t->size() == 1 && (*t)[0].fam == Family::AffA && (*t)[0].nodes == 4)
      found_a3 = true;
  }
  CHECK(found_a3);
  // H12^5 has a node whose deletion leaves ~C4
  const DecoratedSimplex& h125 = entry("H12^5").diagram;
  bool found_c4 = false;
  for (int v = 0; v < h125.nodes(); ++v) {
    auto t = recognize_components(h125.remove_node(v));
    if (t && t->size() == 1 && (*t)[0].fam == Family::AffC && (*t)[0].nodes == 5)
      found_c4 = true;
  }
  CHECK(found_c4);
}
