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

#include "coxdec/catalog.hpp"
#include "doctest.h"

using namespace coxdec;

namespace {

// Links of a finite-volume simplex: every component finite (a finite vertex)
// or one connected affine diagram (an ideal vertex).
bool valid_link(const DecoratedSimplex& link) {
  auto comps = recognize_components(link);
  if (!comps) return false;
  if (all_finite(*comps)) return true;
  return comps->size() == 1 && is_affine((*comps)[0]);
}

bool valid_simplex_diagram(const DecoratedSimplex& d) {
  if (!d.connected()) return false;
  if (!classify(d).hyperbolic()) return false;
  for (int v = 0; v < d.nodes(); ++v)
    if (!valid_link(d.remove_node(v))) return false;
  return true;
}

// Exhaustive regeneration of the classification: grow connected diagrams
// whose every connected proper subdiagram is finite or affine, then keep the
// hyperbolic ones with admissible vertex links. Node count k = dim + 1.
std::set<std::string> generate_simplex_diagrams(int dim) {
  int k = dim + 1;
  std::vector<int> labels = dim == 4 ? std::vector<int>{3, 4, 5} : std::vector<int>{3, 4};

  std::map<std::string, DecoratedSimplex> frontier;  // finite/affine, by canon key
  DecoratedSimplex a1(0);
  frontier[a1.canonical_key()] = a1;

  std::set<std::string> result;
  for (int size = 1; size < k; ++size) {
    std::map<std::string, DecoratedSimplex> next;
    for (const auto& [key, base] : frontier) {
      int j = base.nodes();
      // attach a new node by every nonempty labeled edge subset
      std::vector<int> assign(j, 0);  // 0 = no edge, otherwise label index + 1
      while (true) {
        // check this assignment
        bool any = false;
        for (int x : assign) any |= x != 0;
        if (any) {
          DecoratedSimplex cand(j);  // j + 1 nodes
          for (int p = 0; p < j; ++p)
            for (int q = p + 1; q < j; ++q) cand.set_angle(p, q, base.angle(p, q));
          for (int p = 0; p < j; ++p)
            if (assign[p]) cand.set_angle(p, j, Angle(1, labels[assign[p] - 1]));
          // every connected induced proper subdiagram containing the new node
          // must be finite or affine
          bool ok = true;
          for (unsigned mask = 1; ok && mask < (1u << j); ++mask) {
            std::vector<int> keep;
            for (int p = 0; p < j; ++p)
              if (mask & (1u << p)) keep.push_back(p);
            keep.push_back(j);
            if (static_cast<int>(keep.size()) == cand.nodes()) continue;  // full diagram
            DecoratedSimplex sub = cand.induced(keep);
            if (!sub.connected()) continue;
            if (!recognize_connected(sub)) ok = false;
          }
          if (ok && cand.connected()) {
            if (size + 1 < k) {
              if (recognize_connected(cand)) {
                std::string ck = cand.canonical_key();
                next.emplace(ck, cand);
              }
            } else if (!recognize_connected(cand) && valid_simplex_diagram(cand)) {
              result.insert(cand.canonical_key());
            }
          }
        }
        // advance assignment
        int pos = 0;
        while (pos < j) {
          if (++assign[pos] <= static_cast<int>(labels.size())) break;
          assign[pos] = 0;
          ++pos;
        }
        if (pos == j) break;
      }
    }
    frontier = std::move(next);
  }
  return result;
}

std::multiset<std::string> ideal_link_names(const DecoratedSimplex& d) {
  std::multiset<std::string> out;
  for (const auto& vl : vertex_links(d))
    if (vl.kind.parabolic()) {
      auto comps = recognize_components(vl.link);
      REQUIRE(comps.has_value());
      out.insert(components_name(*comps));
    }
  return out;
}

}  // namespace

TEST_CASE("catalog counts per dimension") {
  CHECK(hyperbolic_simplices(4).size() == 14);
  CHECK(hyperbolic_simplices(5).size() == 12);
  CHECK(hyperbolic_simplices(6).size() == 3);
  CHECK(hyperbolic_simplices(7).size() == 4);
  CHECK(hyperbolic_simplices(8).size() == 4);
  CHECK(hyperbolic_simplices(9).size() == 3);
  int compact = 0;
  for (const auto& e : hyperbolic_simplices(4)) compact += e.compact;
  CHECK(compact == 5);
  CHECK_THROWS_AS(hyperbolic_simplices(3), std::out_of_range);
  CHECK_THROWS_AS(hyperbolic_simplices(10), std::out_of_range);
}

TEST_CASE("catalog entries are hyperbolic simplices with admissible links") {
  for (const auto& e : all_simplices()) {
    INFO("entry ", e.notation);
    CHECK(e.diagram.dim() == e.dim);
    CHECK(classify(e.diagram).hyperbolic());
    bool any_ideal = false;
    for (const auto& vl : vertex_links(e.diagram)) {
      bool ok = vl.kind.elliptic() || vl.kind.parabolic();
      CHECK(ok);
      any_ideal |= vl.kind.parabolic();
    }
    CHECK(any_ideal == !e.compact);
  }
}

TEST_CASE("catalog volumes are positive and ascend within each notation family") {
  for (int n = 4; n <= 9; ++n) {
    for (bool compact : {false, true}) {
      double prev = 0.0;
      for (const auto& e : hyperbolic_simplices(n)) {
        if (e.compact != compact) continue;
        CHECK(e.volume > 0.0);
        CHECK(e.volume >= prev);
        prev = e.volume;
      }
    }
  }
  CHECK(volume("H1^(4)") == doctest::Approx(0.00091385226));
  CHECK(volume("H3^4") == doctest::Approx(0.01370778389));
  CHECK(volume("H9^4") == doctest::Approx(0.13707783890));
  CHECK(volume("H1^8") == doctest::Approx(0.0213042335e-6));
  CHECK_THROWS_AS(volume("H99^4"), std::out_of_range);
}

TEST_CASE("catalog diagrams are pairwise non-isomorphic") {
  std::set<std::string> keys;
  for (const auto& e : all_simplices()) {
    std::string k = std::to_string(e.dim) + "|" + e.diagram.canonical_key();
    INFO("entry ", e.notation);
    CHECK(keys.insert(k).second);
  }
}

TEST_CASE("ideal vertex structure of the key catalog entries") {
  auto links = [](const char* name) { return ideal_link_names(entry(name).diagram); };
  CHECK(links("H3^4") == std::multiset<std::string>{"~A3"});
  CHECK(links("H9^4") == std::multiset<std::string>{"~A3", "~A3", "~A3"});
  CHECK(links("H5^5") == std::multiset<std::string>{"~C4", "~F4"});
  CHECK(links("H12^5") ==
        std::multiset<std::string>{"~C4", "~C4", "~F4", "~F4", "~F4", "~F4"});
  CHECK(links("H4^5") == std::multiset<std::string>{"~D4"});
  CHECK(links("H11^5") ==
        std::multiset<std::string>{"~D4", "~D4", "~D4", "~D4", "~D4"});
  CHECK(links("H7^5") == std::multiset<std::string>{"~B4", "~F4", "~F4"});
  CHECK(links("H1^8") == std::multiset<std::string>{"~E7"});
  CHECK(links("H4^8") == std::multiset<std::string>{"~A7", "~E7"});
  CHECK(links("H1^9") == std::multiset<std::string>{"~E8"});
  CHECK(links("H3^9") == std::multiset<std::string>{"~D8", "~E8", "~E8"});
}

TEST_CASE("catalog equals the regenerated classification" * doctest::timeout(600)) {
  for (int n = 4; n <= 9; ++n) {
    std::set<std::string> expected;
    for (const auto& e : hyperbolic_simplices(n)) expected.insert(e.diagram.canonical_key());
    std::set<std::string> generated = generate_simplex_diagrams(n);
    INFO("dimension ", n);
    CHECK(generated == expected);
  }
}

TEST_CASE("spherical rules: fundamental ranks match target ranks") {
  auto rank_of = [](const TypeId& t) { return t.nodes; };
  for (const auto& rule : spherical_rules()) {
    int fr = rank_of(rule.fundamental);
    for (const auto& target : rule.targets) {
      int tr = 0;
      for (const auto& c : target) tr += rank_of(c);
      CHECK(tr == fr);
    }
  }
}

TEST_CASE("spherical rules: published rows") {
  auto targets_of = [](Family f, int nodes) {
    return spherical_rule_targets(TypeId{f, nodes, 0});
  };
  auto name_set = [](const std::vector<std::vector<TypeId>>& ts) {
    std::multiset<std::string> s;
    for (const auto& t : ts) s.insert(components_name(t));
    return s;
  };
  CHECK(name_set(targets_of(Family::H3, 3)) == std::multiset<std::string>{"3*A1"});
  CHECK(name_set(targets_of(Family::F4, 4)) == std::multiset<std::string>{"2*A2"});
  // only nontrivial composition of 4 into parts > 1 is 2 + 2
  CHECK(name_set(targets_of(Family::D, 4)) == std::multiset<std::string>{"4*A1"});
  CHECK(name_set(targets_of(Family::D, 5)) == std::multiset<std::string>{"2*A1+A3"});
  CHECK(targets_of(Family::H4, 4).size() == 6);
  CHECK(targets_of(Family::E8, 8).size() == 14);
}
