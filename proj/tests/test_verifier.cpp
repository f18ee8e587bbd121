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

#include <map>
#include <set>

#include "coxdec/verifier.hpp"
#include "doctest.h"

using namespace coxdec;

namespace {

std::multiset<long long> ideal_counts(const VerifyOutcome& v) {
  std::multiset<long long> out;
  for (const auto& [name, count] : v.ideal_incidences) out.insert(count);
  return out;
}

}  // namespace

TEST_CASE("place_seed: identity placement for (F, F)") {
  const CatalogEntry& f = entry("H3^4");
  auto seeds = place_seed(f, f);
  REQUIRE(!seeds.empty());
  Tile id = tile_of(realize(f.diagram));
  bool found = false;
  for (const auto& s : seeds) found |= s.key == id.key;
  CHECK(found);
}

TEST_CASE("place_seed: no link-congruent vertex pair yields no seeds") {
  // H1^4 has no vertex link matching any of H9^4
  auto seeds = place_seed(entry("H1^4"), entry("H9^4"));
  CHECK(seeds.empty());
}

TEST_CASE("tiling (H3^4, H9^4): 10 tiles, cusps 8+1+1, all ridges fundamental") {
  VerifyOutcome v = verify_decomposition(entry("H3^4"), entry("H9^4"));
  REQUIRE(v.verified);
  CHECK(v.n == 10);
  CHECK(ideal_counts(v) == std::multiset<long long>{1, 1, 8});
  for (bool fundamental : v.tiling.ridge_fundamental) CHECK(fundamental);
  CHECK(!v.tiling.mirror_keys.empty());
}

TEST_CASE("tiling (H4^5, H11^5): 20 tiles, cusps 16+1+1+1+1") {
  VerifyOutcome v = verify_decomposition(entry("H4^5"), entry("H11^5"));
  REQUIRE(v.verified);
  CHECK(v.n == 20);
  CHECK(ideal_counts(v) == std::multiset<long long>{1, 1, 1, 1, 16});
  for (bool fundamental : v.tiling.ridge_fundamental) CHECK(fundamental);
}

TEST_CASE("tiling: cusp incidences sum to N times the cusp count of F") {
  VerifyOutcome v = verify_decomposition(entry("H3^4"), entry("H9^4"));
  REQUIRE(v.verified);
  long long total = 0;
  for (const auto& [name, count] : v.ideal_incidences) total += count;
  CHECK(total == v.n * ideal_vertex_count(entry("H3^4").diagram));
}

TEST_CASE("refutation path: the budget-eliminated pairs admit no second-type tiling") {
  // (H7^5, H11^5): no vertex of P has a link equal to a link of F, so seeding
  // fails fast even though a sixfold superposition of H11^5 exists.
  auto seeds = place_seed(entry("H7^5"), entry("H11^5"));
  CHECK(seeds.empty());
  VerifyOutcome v = verify_decomposition(entry("H7^5"), entry("H11^5"), 4000);
  CHECK_FALSE(v.verified);
  CHECK(v.message.find("fails fast") != std::string::npos);

  // (H5^5, H12^5): a sixteen-tile closure exists (H12^5 splits into eight
  // copies of H7^5 and each of those into two copies of H5^5), but some ridge
  // of P lies on a mirror, so the decomposition is not of the second type.
  v = verify_decomposition(entry("H5^5"), entry("H12^5"), 4000);
  REQUIRE(v.verified);
  CHECK(v.n == 16);
  bool all_fundamental = true;
  for (bool b : v.tiling.ridge_fundamental) all_fundamental &= b;
  CHECK_FALSE(all_fundamental);
}

TEST_CASE("trivial self tiling") {
  VerifyOutcome v = verify_decomposition(entry("H2^4"), entry("H2^4"));
  // expected N = 1: the identity placement closes immediately
  CHECK(v.verified);
  CHECK(v.n == 1);
  CHECK(v.tiling.mirror_keys.empty());
}

TEST_CASE("two-tile gluing: the glued ridge is not fundamental") {
  VerifyOutcome v = verify_decomposition(entry("H2^(4)"), entry("H3^(4)"));
  REQUIRE(v.verified);
  CHECK(v.n == 2);
  int non_fundamental = 0;
  for (bool b : v.tiling.ridge_fundamental) non_fundamental += !b;
  CHECK(non_fundamental == 1);
  CHECK(v.tiling.mirror_keys.size() == 1);
}

TEST_CASE("normal combination certificate") {
  NormalCombinationReport rep = check_normal_combination();
  CHECK(rep.found);
  CHECK(rep.unit);
  CHECK(rep.gram_matches);
  CHECK(rep.in_orbit);
  CHECK(rep.alternate_refuted);
}

TEST_CASE("normal combination: perturbed coefficients certify nothing") {
  // replacing the coefficient 3 by 2 breaks the unit norm / Gram completion
  NormalCombinationReport rep =
      check_normal_combination(100000, {2, 0, 1, 2, 2, 2, 1, 0, 0});
  CHECK_FALSE(rep.found);
}
