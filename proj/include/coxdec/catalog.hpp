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

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "families.hpp"
#include "geometry.hpp"

namespace coxdec {

// Hyperbolic Coxeter simplices exist in dimensions 2..9; this library covers
// 4 <= n <= 9. Diagrams follow the classification of hyperbolic Coxeter
// simplex groups; volumes are taken from Johnson, Kellerhals, Ratcliffe,
// Tschantz, "The size of a hyperbolic Coxeter simplex", Transformation
// Groups 4 (1999). Notation H_i^n orders each dimension by volume; the five
// compact 4-dimensional simplices are written H_i^(4).
struct CatalogEntry {
  std::string notation;
  int dim = 0;
  DecoratedSimplex diagram;
  double volume = 0.0;
  bool compact = false;
};

inline const std::vector<CatalogEntry>& all_simplices() {
  static const std::vector<CatalogEntry> table = [] {
    std::vector<CatalogEntry> t;
    auto add = [&t](const std::string& name, int dim, bool compact, double vol,
                    const std::vector<std::array<int, 3>>& edges) {
      t.push_back({name, dim, make_simplex(dim, edges, name), vol, compact});
    };

    // --- compact, dimension 4 ---
    add("H1^(4)", 4, true, 0.00091385226,
        {{0, 1, 5}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}});
    add("H2^(4)", 4, true, 0.00776774420,
        {{0, 1, 5}, {1, 2, 3}, {2, 3, 3}, {3, 4, 4}});
    add("H3^(4)", 4, true, 0.01553548841,
        {{0, 1, 5}, {1, 2, 3}, {2, 3, 3}, {2, 4, 3}});
    add("H4^(4)", 4, true, 0.02376015874,
        {{0, 1, 5}, {1, 2, 3}, {2, 3, 3}, {3, 4, 5}});
    add("H5^(4)", 4, true, 0.02513093713,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 0, 4}});

    // --- noncompact, dimension 4 ---
    add("H1^4", 4, false, 0.00685389195,
        {{0, 1, 3}, {1, 2, 4}, {1, 3, 3}, {3, 4, 3}});
    add("H2^4", 4, false, 0.01142315324,
        {{0, 1, 3}, {1, 2, 4}, {2, 3, 3}, {3, 4, 4}});
    add("H3^4", 4, false, 0.01370778389,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 0, 3}, {0, 4, 3}});
    add("H4^4", 4, false, 0.02284630648,
        {{0, 2, 3}, {1, 2, 3}, {2, 3, 4}, {3, 4, 3}});
    add("H5^4", 4, false, 0.03426945973,
        {{0, 1, 3}, {1, 2, 4}, {1, 3, 3}, {3, 4, 4}});
    add("H6^4", 4, false, 0.06853891945,
        {{0, 4, 3}, {1, 4, 3}, {2, 4, 3}, {3, 4, 4}});
    add("H7^4", 4, false, 0.06853891945,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 0, 3}, {0, 4, 4}});
    add("H8^4", 4, false, 0.09138522594,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 4}, {3, 4, 3}, {4, 0, 4}});
    add("H9^4", 4, false, 0.13707783890,
        {{0, 2, 3}, {0, 3, 3}, {0, 4, 3}, {1, 2, 3}, {1, 3, 3}, {1, 4, 3}});

    // --- dimension 5 ---
    add("H1^5", 5, false, 0.0001826041,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 4}, {4, 5, 3}});
    add("H2^5", 5, false, 0.0005478123,
        {{0, 1, 3}, {1, 2, 3}, {0, 3, 3}, {3, 4, 4}, {0, 5, 3}});
    add("H3^5", 5, false, 0.0009130206,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}});
    add("H4^5", 5, false, 0.0010956247,
        {{0, 1, 3}, {0, 2, 3}, {0, 3, 3}, {0, 4, 3}, {4, 5, 3}});
    add("H5^5", 5, false, 0.0018260413,
        {{0, 1, 4}, {1, 2, 3}, {2, 3, 3}, {3, 4, 4}, {4, 5, 3}});
    add("H6^5", 5, false, 0.0020740519,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 0, 3}, {0, 5, 3}});
    add("H7^5", 5, false, 0.0036520826,
        {{0, 1, 3}, {0, 2, 3}, {0, 3, 3}, {3, 4, 4}, {4, 5, 3}});
    add("H8^5", 5, false, 0.0054781239,
        {{0, 1, 3}, {1, 2, 4}, {0, 3, 3}, {3, 4, 4}, {0, 5, 3}});
    add("H9^5", 5, false, 0.0075726186,
        {{0, 1, 4}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 0, 3}});
    add("H10^5", 5, false, 0.0109562478,
        {{0, 1, 3}, {0, 2, 3}, {0, 3, 3}, {0, 4, 3}, {4, 5, 4}});
    add("H11^5", 5, false, 0.0219124956,
        {{0, 1, 3}, {0, 2, 3}, {0, 3, 3}, {0, 4, 3}, {0, 5, 3}});
    add("H12^5", 5, false, 0.0292166608,
        {{0, 1, 4}, {1, 2, 3}, {2, 3, 3}, {3, 4, 4}, {4, 5, 3}, {5, 0, 3}});

    // --- dimension 6 ---
    add("H1^6", 6, false, 0.3987432701e-4,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 4}, {2, 6, 3}});
    add("H2^6", 6, false, 0.7974865401e-4,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {3, 5, 3}, {2, 6, 3}});
    add("H3^6", 6, false, 2.9620928633e-4,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 0, 3}, {0, 6, 3}});

    // --- dimension 7 ---
    add("H1^7", 7, false, 0.1892871372e-5,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {6, 0, 3},
         {0, 7, 3}});
    add("H2^7", 7, false, 0.2725266071e-5,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 4}, {0, 5, 3}, {5, 6, 3}, {0, 7, 3}});
    add("H3^7", 7, false, 0.5450532141e-5,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {2, 4, 3}, {0, 5, 3}, {5, 6, 3}, {0, 7, 3}});
    add("H4^7", 7, false, 4.1106779054e-5,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {0, 4, 3}, {4, 5, 3}, {0, 6, 3}, {6, 7, 3}});

    // --- dimension 8 ---
    add("H1^8", 8, false, 0.0213042335e-6,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {0, 5, 3}, {5, 6, 3}, {6, 7, 3},
         {0, 8, 3}});
    add("H2^8", 8, false, 0.1810859845e-6,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 4}, {0, 6, 3}, {6, 7, 3},
         {0, 8, 3}});
    add("H3^8", 8, false, 0.3621719690e-6,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {3, 5, 3}, {0, 6, 3}, {6, 7, 3},
         {0, 8, 3}});
    add("H4^8", 8, false, 5.7947515032e-6,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {6, 7, 3},
         {7, 0, 3}, {0, 8, 3}});

    // --- dimension 9 ---
    add("H1^9", 9, false, 0.0004650871e-7,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {0, 7, 3},
         {7, 8, 3}, {0, 9, 3}});
    add("H2^9", 9, false, 0.1225504411e-7,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 4}, {0, 7, 3},
         {7, 8, 3}, {0, 9, 3}});
    add("H3^9", 9, false, 0.2451008823e-7,
        {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {4, 6, 3}, {0, 7, 3},
         {7, 8, 3}, {0, 9, 3}});
    return t;
  }();
  return table;
}

inline std::vector<CatalogEntry> hyperbolic_simplices(int n) {
  if (n < 4 || n > 9)
    throw std::out_of_range("catalog covers dimensions 4 through 9");
  std::vector<CatalogEntry> out;
  for (const auto& e : all_simplices())
    if (e.dim == n) out.push_back(e);
  return out;
}

inline const CatalogEntry* find_entry(const std::string& notation) {
  for (const auto& e : all_simplices())
    if (e.notation == notation) return &e;
  return nullptr;
}

inline const CatalogEntry& entry(const std::string& notation) {
  const CatalogEntry* e = find_entry(notation);
  if (!e) throw std::out_of_range("unknown simplex notation: " + notation);
  return *e;
}

inline double volume(const std::string& notation) { return entry(notation).volume; }

// Match an arbitrary decorated simplex against the catalog.
inline std::optional<std::string> catalog_match(const DecoratedSimplex& s) {
  std::string key = s.canonical_key();
  for (const auto& e : all_simplices())
    if (e.dim == s.dim() && e.diagram.canonical_key() == key) return e.notation;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Indecomposable second-type decompositions of spherical simplices: for each
// admissible fundamental type the list of target component multisets.
// ---------------------------------------------------------------------------

struct SphericalRule {
  TypeId fundamental;
  std::vector<std::vector<TypeId>> targets;  // each a sorted component multiset
};

namespace detail {

inline std::vector<TypeId> comp_list(std::vector<TypeId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline TypeId A(int n) { return {Family::A, n, 0}; }
inline TypeId D(int n) { return {Family::D, n, 0}; }
inline TypeId I2(int m) { return {Family::I2, 2, m}; }

// D_n splits as D_{m_1} + ... + D_{m_r} for any composition of n into parts
// greater than 1 (at least two parts), with D_2 = 2A_1 and D_3 = A_3.
inline void d_partitions(int n, int max_part, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (n == 0) {
    if (cur.size() >= 2) out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 2; --p) {
    cur.push_back(p);
    d_partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

inline std::vector<TypeId> d_component(int m) {
  if (m == 2) return {A(1), A(1)};
  if (m == 3) return {A(3)};
  return {D(m)};
}

}  // namespace detail

// Target multisets for one fundamental component type; empty if the type
// admits no nontrivial indecomposable second-type decomposition.
inline std::vector<std::vector<TypeId>> spherical_rule_targets(const TypeId& f) {
  using namespace detail;
  std::vector<std::vector<TypeId>> out;
  auto add = [&out](std::vector<TypeId> v) { out.push_back(comp_list(std::move(v))); };
  if (f.fam == Family::H3) {
    add({A(1), A(1), A(1)});
  } else if (f.fam == Family::F4) {
    add({A(2), A(2)});
  } else if (f.fam == Family::H4) {
    add({A(4)});
    add({I2(5), I2(5)});
    add({A(2), A(2)});
    add({{Family::H3, 3, 0}, A(1)});
    add({D(4)});
    add({A(1), A(1), A(1), A(1)});
  } else if (f.fam == Family::D && f.nodes >= 4) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    d_partitions(f.nodes, f.nodes - 1, cur, parts);
    for (const auto& p : parts) {
      std::vector<TypeId> comps;
      for (int m : p)
        for (const TypeId& c : d_component(m)) comps.push_back(c);
      add(std::move(comps));
    }
  } else if (f.fam == Family::E6) {
    add({A(5), A(1)});
    add({A(2), A(2), A(2)});
  } else if (f.fam == Family::E7) {
    add({D(6), A(1)});
    add({A(5), A(2)});
    add({A(3), A(3), A(1)});
    add({A(7)});
    add({D(4), A(1), A(1), A(1)});
    add({A(1), A(1), A(1), A(1), A(1), A(1), A(1)});
  } else if (f.fam == Family::E8) {
    add({A(8)});
    add({A(7), A(1)});
    add({A(5), A(2), A(1)});
    add({A(4), A(4)});
    add({A(2), A(2), A(2), A(2)});
    add({A(6), A(2)});
    add({{Family::E7, 7, 0}, A(1)});
    add({D(8)});
    add({D(6), A(1), A(1)});
    add({D(5), A(3)});
    add({D(4), D(4)});
    add({D(4), A(1), A(1), A(1), A(1)});
    add({A(3), A(3), A(1), A(1)});
    add({A(1), A(1), A(1), A(1), A(1), A(1), A(1), A(1)});
  }
  return out;
}

inline std::vector<SphericalRule> spherical_rules() {
  std::vector<SphericalRule> rules;
  std::vector<TypeId> fundamentals = {
      {Family::H3, 3, 0}, {Family::F4, 4, 0}, {Family::H4, 4, 0},
      {Family::E6, 6, 0}, {Family::E7, 7, 0}, {Family::E8, 8, 0}};
  for (int n = 4; n <= 9; ++n) fundamentals.push_back({Family::D, n, 0});
  for (const auto& f : fundamentals) {
    auto t = spherical_rule_targets(f);
    if (!t.empty()) rules.push_back({f, std::move(t)});
  }
  return rules;
}

// ---------------------------------------------------------------------------
// Reference results used by `reproduce`: the simple first-type decompositions
// whose targets are again Coxeter simplices, the second-type candidate pairs
// surviving the counting filters, and the realizable second-type symbols.
// ---------------------------------------------------------------------------

struct GoldenRow {
  std::string f, p;
  int n = 0;       // tile count
  int s = 0;       // gluing depth as published (informational)
};

inline const std::vector<GoldenRow>& golden_first_type() {
  static const std::vector<GoldenRow> rows = {
      {"H2^(4)", "H3^(4)", 2, 1},
      {"H6^4", "H9^4", 2, 1},   {"H7^4", "H9^4", 2, 1},
      {"H5^4", "H6^4", 2, 1},   {"H5^4", "H7^4", 2, 1},
      {"H4^4", "H7^4", 3, 2},   {"H4^4", "H8^4", 4, 2},
      {"H2^4", "H4^4", 2, 1},   {"H2^4", "H5^4", 3, 2},
      {"H1^4", "H3^4", 2, 1},   {"H1^4", "H5^4", 5, 3},
      {"H10^5", "H11^5", 2, 1}, {"H8^5", "H10^5", 2, 1},
      {"H7^5", "H12^5", 8, 3},  {"H7^5", "H10^5", 3, 2},
      {"H5^5", "H8^5", 3, 2},   {"H5^5", "H7^5", 2, 1},
      {"H3^5", "H8^5", 6, 3},   {"H3^5", "H7^5", 4, 3},
      {"H2^5", "H8^5", 10, 4},  {"H2^5", "H4^5", 2, 1},
      {"H1^5", "H5^5", 10, 4},  {"H1^5", "H3^5", 5, 4},
      {"H1^5", "H2^5", 3, 2},
      {"H1^6", "H2^6", 2, 1},
      {"H2^7", "H3^7", 2, 1},
      {"H2^8", "H3^8", 2, 1},
      {"H2^9", "H3^9", 2, 1},
  };
  return rows;
}

struct GoldenPair {
  std::string f, p;
  int n = 0;
};

// The ordered pairs surviving the volume + subdiagram + counting filters.
inline const std::vector<GoldenPair>& golden_candidate_pairs() {
  static const std::vector<GoldenPair> rows = {
      {"H3^4", "H9^4", 10},  {"H5^5", "H12^5", 16}, {"H7^5", "H11^5", 6},
      {"H4^5", "H11^5", 20}, {"H1^8", "H4^8", 272}, {"H1^9", "H3^9", 527},
  };
  return rows;
}

// The realizable second-type decompositions.
inline const std::vector<GoldenPair>& golden_second_type() {
  static const std::vector<GoldenPair> rows = {
      {"H3^4", "H9^4", 10},
      {"H4^5", "H11^5", 20},
      {"H1^8", "H4^8", 272},
      {"H1^9", "H3^9", 527},
  };
  return rows;
}

// Published per-fundamental counts of simple decompositions with non-Coxeter
// targets among the compact 4-dimensional fundamentals (soft targets only).
inline const std::vector<std::pair<std::string, int>>& soft_simple_counts() {
  static const std::vector<std::pair<std::string, int>> rows = {
      {"H1^(4)", 55}, {"H2^(4)", 1}, {"H3^(4)", 5}, {"H4^(4)", 2}};
  return rows;
}

}  // namespace coxdec
