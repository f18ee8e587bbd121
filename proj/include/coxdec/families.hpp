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

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diagram.hpp"

namespace coxdec {

// Connected spherical and Euclidean Coxeter diagram families. `nodes` is the
// node count of the diagram (for affine families that is rank + 1).
enum class Family {
  A, B, D, E6, E7, E8, F4, H3, H4, I2,          // finite
  AffA, AffB, AffC, AffD, AffE6, AffE7, AffE8,  // affine
  AffF4, AffG2
};

struct TypeId {
  Family fam;
  int nodes = 0;
  int label = 0;  // edge label for I2(m)

  friend bool operator==(const TypeId& a, const TypeId& b) {
    return a.fam == b.fam && a.nodes == b.nodes && a.label == b.label;
  }
  friend bool operator<(const TypeId& a, const TypeId& b) {
    if (a.fam != b.fam) return a.fam < b.fam;
    if (a.nodes != b.nodes) return a.nodes < b.nodes;
    return a.label < b.label;
  }
};

inline bool is_affine(const TypeId& t) { return t.fam >= Family::AffA; }

inline std::string type_name(const TypeId& t) {
  switch (t.fam) {
    case Family::A: return "A" + std::to_string(t.nodes);
    case Family::B: return "B" + std::to_string(t.nodes);
    case Family::D: return "D" + std::to_string(t.nodes);
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
    case Family::F4: return "F4";
    case Family::H3: return "H3";
    case Family::H4: return "H4";
    case Family::I2:
      if (t.label == 4) return "B2";
      if (t.label == 6) return "G2";
      return "I2(" + std::to_string(t.label) + ")";
    case Family::AffA: return "~A" + std::to_string(t.nodes - 1);
    case Family::AffB: return "~B" + std::to_string(t.nodes - 1);
    case Family::AffC: return "~C" + std::to_string(t.nodes - 1);
    case Family::AffD: return "~D" + std::to_string(t.nodes - 1);
    case Family::AffE6: return "~E6";
    case Family::AffE7: return "~E7";
    case Family::AffE8: return "~E8";
    case Family::AffF4: return "~F4";
    case Family::AffG2: return "~G2";
  }
  return "?";
}

// Order of the finite reflection group of a given type. Used for spherical
// tile-count bounds; values fit comfortably in a double.
inline double weyl_order(const TypeId& t) {
  auto factorial = [](int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  switch (t.fam) {
    case Family::A: return factorial(t.nodes + 1);
    case Family::B: return std::pow(2.0, t.nodes) * factorial(t.nodes);
    case Family::D: return std::pow(2.0, t.nodes - 1) * factorial(t.nodes);
    case Family::E6: return 51840.0;
    case Family::E7: return 2903040.0;
    case Family::E8: return 696729600.0;
    case Family::F4: return 1152.0;
    case Family::H3: return 120.0;
    case Family::H4: return 14400.0;
    case Family::I2: return 2.0 * t.label;
    default: return 0.0;  // affine groups are infinite
  }
}

namespace detail {

struct Arm {
  std::vector<int> labels;  // edge labels from the branch node outward
  size_t len() const { return labels.size(); }
};

// Decompose a connected tree diagram with exactly one node of degree >= 3
// (or a bare path when none exists) into arms hanging off the branch node.
inline std::optional<std::vector<Arm>> spider_arms(const DecoratedSimplex& d) {
  int k = d.nodes();
  int branch = -1;
  for (int v = 0; v < k; ++v) {
    if (d.degree(v) >= 3) {
      if (branch >= 0) return std::nullopt;  // two branch nodes
      branch = v;
    }
  }
  if (branch < 0) return std::nullopt;
  std::vector<Arm> arms;
  for (int j = 0; j < k; ++j) {
    if (j == branch || d.angle(branch, j).right()) continue;
    Arm arm;
    int prev = branch, cur = j;
    arm.labels.push_back(d.angle(branch, j).den);
    while (true) {
      int next = -1;
      for (int x = 0; x < k; ++x) {
        if (x == prev || x == cur) continue;
        if (!d.angle(cur, x).right()) {
          if (next >= 0) return std::nullopt;  // second branch node
          next = x;
        }
      }
      if (next < 0) break;
      arm.labels.push_back(d.angle(cur, next).den);
      prev = cur;
      cur = next;
    }
    arms.push_back(std::move(arm));
  }
  std::sort(arms.begin(), arms.end(), [](const Arm& a, const Arm& b) {
    return a.labels.size() != b.labels.size() ? a.labels.size() < b.labels.size()
                                              : a.labels < b.labels;
  });
  return arms;
}

inline bool all3(const std::vector<int>& v) {
  for (int x : v)
    if (x != 3) return false;
  return true;
}

// Returns the edge-label sequence if the diagram is a simple path, choosing
// the lexicographically smaller reading direction.
inline std::optional<std::vector<int>> path_labels(const DecoratedSimplex& d) {
  int k = d.nodes();
  if (k == 1) return std::vector<int>{};
  int ends = 0, end0 = -1;
  for (int v = 0; v < k; ++v) {
    int deg = d.degree(v);
    if (deg > 2) return std::nullopt;
    if (deg == 0) return std::nullopt;
    if (deg == 1) {
      ++ends;
      if (end0 < 0) end0 = v;
    }
  }
  if (ends != 2) return std::nullopt;
  std::vector<int> seq;
  int prev = -1, cur = end0;
  for (int step = 0; step + 1 < k; ++step) {
    int next = -1;
    for (int x = 0; x < k; ++x)
      if (x != prev && x != cur && !d.angle(cur, x).right()) next = x;
    if (next < 0) return std::nullopt;
    seq.push_back(d.angle(cur, next).den);
    prev = cur;
    cur = next;
  }
  std::vector<int> rev(seq.rbegin(), seq.rend());
  return std::min(seq, rev);
}

// Returns the cyclic edge labels if the diagram is a single cycle.
inline std::optional<std::vector<int>> cycle_labels(const DecoratedSimplex& d) {
  int k = d.nodes();
  if (k < 3) return std::nullopt;
  for (int v = 0; v < k; ++v)
    if (d.degree(v) != 2) return std::nullopt;
  std::vector<int> seq;
  int prev = -1, cur = 0;
  for (int step = 0; step < k; ++step) {
    int next = -1;
    for (int x = 0; x < k; ++x)
      if (x != prev && x != cur && !d.angle(cur, x).right()) {
        next = x;
        break;
      }
    if (step == k - 1) next = 0;
    seq.push_back(d.angle(cur, next).den);
    prev = cur;
    cur = next;
  }
  if (static_cast<int>(seq.size()) != k) return std::nullopt;
  return seq;
}

}  // namespace detail

// Recognize a connected Coxeter diagram as a finite or affine type. Decorated
// edges (numerator > 1) and anything hyperbolic yield nullopt.
inline std::optional<TypeId> recognize_connected(const DecoratedSimplex& d) {
  using namespace detail;
  int k = d.nodes();
  if (!d.is_coxeter()) return std::nullopt;
  if (k == 1) return TypeId{Family::A, 1, 0};
  if (k == 2) {
    int m = d.angle(0, 1).den;
    if (m == 3) return TypeId{Family::A, 2, 0};
    return TypeId{Family::I2, 2, m};
  }
  if (auto cyc = cycle_labels(d)) {
    if (all3(*cyc)) return TypeId{Family::AffA, k, 0};
    return std::nullopt;
  }
  if (auto path = path_labels(d)) {
    const auto& p = *path;  // lexicographically minimal reading direction
    if (all3(p)) return TypeId{Family::A, k, 0};
    int fours = 0, others = 0;
    for (int m : p) {
      if (m == 4) ++fours;
      else if (m != 3) ++others;
    }
    if (others == 0 && fours == 1) {
      if (p.back() == 4) return TypeId{Family::B, k, 0};
      if (k == 4 && p[1] == 4) return TypeId{Family::F4, 4, 0};
      if (k == 5 && p[2] == 4) return TypeId{Family::AffF4, 5, 0};
      return std::nullopt;
    }
    if (others == 0 && fours == 2 && p.front() == 4 && p.back() == 4) {
      bool middle3 = true;
      for (size_t i = 1; i + 1 < p.size(); ++i) middle3 &= p[i] == 3;
      if (middle3) return TypeId{Family::AffC, k, 0};
      return std::nullopt;
    }
    if (fours == 0 && others == 1 && p.back() == 5) {
      bool rest3 = true;
      for (size_t i = 0; i + 1 < p.size(); ++i) rest3 &= p[i] == 3;
      if (rest3 && k == 3) return TypeId{Family::H3, 3, 0};
      if (rest3 && k == 4) return TypeId{Family::H4, 4, 0};
      return std::nullopt;
    }
    if (fours == 0 && others == 1 && k == 3 && p.front() == 3 && p.back() == 6)
      return TypeId{Family::AffG2, 3, 0};
    return std::nullopt;
  }
  // Trees with branch nodes.
  int deg_ge3 = 0, max_deg = 0;
  for (int v = 0; v < k; ++v) {
    int deg = d.degree(v);
    max_deg = std::max(max_deg, deg);
    if (deg >= 3) ++deg_ge3;
  }
  if (max_deg >= 4) {
    // The only admissible star is the all-3 K_{1,4} (affine D4).
    if (k == 5 && max_deg == 4) {
      auto arms = spider_arms(d);
      if (arms && arms->size() == 4) {
        for (const auto& a : *arms)
          if (a.len() != 1 || a.labels[0] != 3) return std::nullopt;
        return TypeId{Family::AffD, 5, 0};
      }
    }
    return std::nullopt;
  }
  if (deg_ge3 == 1) {
    auto arms_opt = spider_arms(d);
    if (!arms_opt) return std::nullopt;
    const auto& arms = *arms_opt;
    if (arms.size() != 3) return std::nullopt;
    const auto &s0 = arms[0], &s1 = arms[1], &s2 = arms[2];
    bool plain = all3(s0.labels) && all3(s1.labels) && all3(s2.labels);
    if (plain) {
      if (s0.len() == 1 && s1.len() == 1) return TypeId{Family::D, k, 0};
      if (s0.len() == 1 && s1.len() == 2 && s2.len() == 2) return TypeId{Family::E6, 6, 0};
      if (s0.len() == 1 && s1.len() == 2 && s2.len() == 3) return TypeId{Family::E7, 7, 0};
      if (s0.len() == 1 && s1.len() == 2 && s2.len() == 4) return TypeId{Family::E8, 8, 0};
      if (s0.len() == 2 && s1.len() == 2 && s2.len() == 2) return TypeId{Family::AffE6, 7, 0};
      if (s0.len() == 1 && s1.len() == 3 && s2.len() == 3) return TypeId{Family::AffE7, 8, 0};
      if (s0.len() == 1 && s1.len() == 2 && s2.len() == 5) return TypeId{Family::AffE8, 9, 0};
      return std::nullopt;
    }
    // Affine B: two single all-3 prongs, one all-3 chain ending with a 4.
    if (s0.len() == 1 && s1.len() == 1 && s0.labels[0] == 3 && s1.labels[0] == 3) {
      const auto& c = s2.labels;
      bool ok = c.back() == 4;
      for (size_t i = 0; i + 1 < c.size(); ++i) ok &= c[i] == 3;
      if (ok) return TypeId{Family::AffB, k, 0};
    }
    return std::nullopt;
  }
  if (deg_ge3 == 2) {
    // Affine D: all-3 double fork.
    if (!d.is_coxeter()) return std::nullopt;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (!d.angle(i, j).right() && d.angle(i, j).den != 3) return std::nullopt;
    std::vector<int> branch;
    for (int v = 0; v < k; ++v)
      if (d.degree(v) == 3) branch.push_back(v);
    if (branch.size() != 2) return std::nullopt;
    int leaves = 0;
    for (int v = 0; v < k; ++v)
      if (d.degree(v) == 1) ++leaves;
    if (leaves != 4) return std::nullopt;
    // each branch node needs two leaf neighbors
    for (int b : branch) {
      int leaf_nb = 0;
      for (int x = 0; x < k; ++x)
        if (x != b && !d.angle(b, x).right() && d.degree(x) == 1) ++leaf_nb;
      if (leaf_nb != 2) return std::nullopt;
    }
    return TypeId{Family::AffD, k, 0};
  }
  return std::nullopt;
}

// Component type list of a possibly disconnected diagram, sorted. Empty
// optional if some component is neither finite nor affine.
inline std::optional<std::vector<TypeId>> recognize_components(const DecoratedSimplex& d) {
  std::vector<TypeId> out;
  for (const auto& comp : d.components()) {
    auto t = recognize_connected(d.induced(comp));
    if (!t) return std::nullopt;
    out.push_back(*t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string components_name(const std::vector<TypeId>& ts) {
  std::string out;
  size_t i = 0;
  while (i < ts.size()) {
    size_t j = i;
    while (j < ts.size() && ts[j] == ts[i]) ++j;
    if (!out.empty()) out += "+";
    if (j - i > 1) out += std::to_string(j - i) + "*";
    out += type_name(ts[i]);
    i = j;
  }
  return out.empty() ? "(empty)" : out;
}

inline bool all_finite(const std::vector<TypeId>& ts) {
  for (const auto& t : ts)
    if (is_affine(t)) return false;
  return true;
}

inline bool all_affine(const std::vector<TypeId>& ts) {
  for (const auto& t : ts)
    if (!is_affine(t)) return false;
  return !ts.empty();
}

inline double weyl_order_product(const std::vector<TypeId>& ts) {
  double p = 1.0;
  for (const auto& t : ts) p *= weyl_order(t);
  return p;
}

}  // namespace coxdec
