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

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "diagram.hpp"
#include "families.hpp"
#include "geometry.hpp"

namespace coxdec {

// ---------------------------------------------------------------------------
// Link compatibility.
//
// A spherical simplex with component types P admits a second-type Coxeter
// decomposition with fundamental component types F iff the components can be
// matched so that every fundamental component either stays fixed or expands
// along one of its indecomposable decompositions.
// ---------------------------------------------------------------------------

namespace detail {

inline bool match_components(std::vector<TypeId> fund, std::vector<TypeId> target);

inline bool consume(std::vector<TypeId>& target, const std::vector<TypeId>& parts) {
  for (const TypeId& p : parts) {
    auto it = std::find(target.begin(), target.end(), p);
    if (it == target.end()) return false;
    target.erase(it);
  }
  return true;
}

inline bool match_components(std::vector<TypeId> fund, std::vector<TypeId> target) {
  if (fund.empty()) return target.empty();
  TypeId f = fund.back();
  fund.pop_back();
  // keep the component unchanged
  {
    std::vector<TypeId> t = target;
    if (consume(t, {f}) && match_components(fund, t)) return true;
  }
  // or expand it along one of its indecomposable second-type decompositions
  for (const auto& expansion : spherical_rule_targets(f)) {
    std::vector<TypeId> t = target;
    if (consume(t, expansion) && match_components(fund, t)) return true;
  }
  return false;
}

}  // namespace detail

// Second-type compatibility of spherical links given as component multisets.
inline bool spherical_compatible(const std::vector<TypeId>& fund,
                                 const std::vector<TypeId>& target) {
  if (fund == target) return true;
  int fr = 0, tr = 0;
  for (const auto& t : fund) fr += t.nodes;
  for (const auto& t : target) tr += t.nodes;
  if (fr != tr) return false;
  return detail::match_components(fund, target);
}

// Spherical tile count of a compatible pair: |W(fund)| / |W(target)|.
inline std::optional<double> spherical_tile_count(const std::vector<TypeId>& fund,
                                                  const std::vector<TypeId>& target) {
  if (!spherical_compatible(fund, target)) return std::nullopt;
  return weyl_order_product(fund) / weyl_order_product(target);
}

// Euclidean link compatibility: equal affine types are always admissible;
// distinct types survive only if the subdiagram property holds one level
// down, with the vertex links of the Euclidean simplices matched spherically.
inline bool euclidean_compatible(const DecoratedSimplex& fund, const DecoratedSimplex& target) {
  if (fund.nodes() != target.nodes()) return false;
  if (fund.canonical_key() == target.canonical_key()) return true;
  for (int v = 0; v < target.nodes(); ++v) {
    auto tv = recognize_components(target.remove_node(v));
    if (!tv) return false;
    bool matched = false;
    for (int w = 0; w < fund.nodes() && !matched; ++w) {
      auto fw = recognize_components(fund.remove_node(w));
      if (!fw) continue;
      matched = spherical_compatible(*fw, *tv);
    }
    if (!matched) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Filter pipeline over ordered catalog pairs.
// ---------------------------------------------------------------------------

struct FilterReport {
  bool pass = false;
  std::string detail;
};

struct VertexCover {
  int vertex = -1;
  std::string target_link;            // link type at this vertex of P
  std::string tile_link;              // cusp type of the covering tiles
  long long count = 0;                // chosen incidence
};

struct BudgetReport {
  bool feasible = false;
  long long supply_total = 0;              // N x (ideal vertices of F)
  long long demand_min_total = 0;          // sum of per-vertex minimum covers
  std::vector<std::string> certificates;   // human-readable refutations
  std::vector<VertexCover> assignment;     // a feasibility witness when it exists
};

struct CandidatePair {
  std::string f, p;
  int dim = 0;
  long long n = 0;
  FilterReport volume, subdiagram, counting;
  BudgetReport budget;

  bool surviving() const { return volume.pass && subdiagram.pass && counting.pass; }
};

// Volume Property: the ratio of volumes must be an integer N >= 2.
inline std::optional<long long> volume_filter(const CatalogEntry& f, const CatalogEntry& p) {
  if (f.dim != p.dim) return std::nullopt;
  double ratio = p.volume / f.volume;
  long long n = std::llround(ratio);
  if (n < 2) return std::nullopt;
  if (std::fabs(ratio - n) / n >= 1e-4) return std::nullopt;
  return n;
}

// Subdiagram Property: every one-node-deleted subdiagram of P matches one of
// F, either exactly or through a second-type link decomposition.
inline FilterReport subdiagram_filter(const CatalogEntry& f, const CatalogEntry& p) {
  FilterReport rep;
  std::ostringstream os;
  rep.pass = true;
  auto fl = vertex_links(f.diagram);
  for (const auto& pv : vertex_links(p.diagram)) {
    bool matched = false;
    std::string how;
    for (const auto& fv : fl) {
      if (fv.canonical == pv.canonical) {
        matched = true;
        how = "equal to link at node " + std::to_string(fv.vertex) + " of F";
        break;
      }
      if (pv.kind.parabolic() && fv.kind.parabolic()) {
        if (euclidean_compatible(fv.link, pv.link)) {
          matched = true;
          how = "euclidean pair with link at node " + std::to_string(fv.vertex) + " of F";
          break;
        }
      } else if (pv.kind.elliptic() && fv.kind.elliptic()) {
        auto fc = recognize_components(fv.link);
        auto pc = recognize_components(pv.link);
        if (fc && pc && spherical_compatible(*fc, *pc)) {
          matched = true;
          how = "spherical pair with link at node " + std::to_string(fv.vertex) + " of F";
          break;
        }
      }
    }
    auto pc = recognize_components(pv.link);
    os << "node " << pv.vertex << " (" << (pc ? components_name(*pc) : "?") << "): "
       << (matched ? how : "no matching link of F") << "\n";
    if (!matched) rep.pass = false;
  }
  rep.detail = os.str();
  return rep;
}

// Counting filters: the two-tile exclusion, the 2(n+1) bound when every
// vertex is covered once, and exact spherical corner counts when P is
// compact (its vertices are all finite, so each corner of P must be filled
// either by one matching corner of F or by a full spherical tiling whose tile
// count cannot exceed N).
inline FilterReport counting_filter(const CatalogEntry& f, const CatalogEntry& p,
                                    long long n) {
  FilterReport rep;
  std::ostringstream os;
  if (n == 2) {
    rep.pass = false;
    rep.detail = "rule two-tiles: a two-tile decomposition has a non-fundamental angle";
    return rep;
  }
  auto fl = vertex_links(f.diagram);
  auto pl = vertex_links(p.diagram);

  bool some_vertex_decomposable = false;
  for (const auto& pv : pl) {
    for (const auto& fv : fl) {
      if (pv.kind.parabolic() && fv.kind.parabolic()) {
        if (euclidean_compatible(fv.link, pv.link)) some_vertex_decomposable = true;
      } else if (pv.kind.elliptic() && fv.kind.elliptic()) {
        auto fc = recognize_components(fv.link);
        auto pc = recognize_components(pv.link);
        if (fc && pc && *fc != *pc && spherical_compatible(*fc, *pc))
          some_vertex_decomposable = true;
      }
    }
  }
  if (n < 2 * (p.dim + 1) && !some_vertex_decomposable) {
    rep.pass = false;
    os << "rule unique-corners: every vertex of P meets one tile, so N >= "
       << 2 * (p.dim + 1) << " is required but N = " << n;
    rep.detail = os.str();
    return rep;
  }

  if (p.compact) {
    // every corner of P is a spherical simplex tiled by corners of F
    for (const auto& pv : pl) {
      auto pc = recognize_components(pv.link);
      if (!pc) continue;
      bool exact = false;
      double best_count = -1.0;
      for (const auto& fv : fl) {
        if (!fv.kind.elliptic()) continue;
        auto fc = recognize_components(fv.link);
        if (!fc) continue;
        if (*fc == *pc) { exact = true; break; }
        if (auto cnt = spherical_tile_count(*fc, *pc))
          if (best_count < 0 || *cnt < best_count) best_count = *cnt;
      }
      if (exact) continue;
      if (best_count < 0 || best_count > static_cast<double>(n)) {
        rep.pass = false;
        os << "rule corner-count: vertex " << pv.vertex << " ("
           << components_name(*pc) << ") needs ";
        if (best_count < 0) os << "a corner type F does not have";
        else os << best_count << " tiles, more than N = " << n;
        rep.detail = os.str();
        return rep;
      }
    }
  }

  rep.pass = true;
  rep.detail = "passes two-tile, unique-corner and corner-count rules";
  return rep;
}

// ---------------------------------------------------------------------------
// Ideal vertex budget. In a second-type decomposition every cusp of every
// tile sits at an ideal vertex of P, and all tile cusps at one vertex carry
// the same link type. Per vertex the admissible incidence counts are:
//   - same type as the tile cusp: 1, or at least 2^(n-1) (self-similar
//     Euclidean decompositions),
//   - different type: at least 3 (a 2-tile cover would give the link a
//     non-fundamental angle), at least 4 when the vertex link is ~D4 (a
//     3-tile cover would need a (~B4,~D4) or (~F4,~D4) triple, and the 4*A1
//     corner of ~D4 rules both out),
//   - incompatible types never cover each other.
// Supplies are conserved per cusp type: N tiles provide N copies of each
// cusp of F.
// ---------------------------------------------------------------------------

struct BudgetOption {
  int tile_type = -1;        // index into the distinct cusp types of F
  long long min_count = 0;   // minimal admissible incidence
  bool allow_one = false;    // exact single cover admissible
};

inline BudgetReport ideal_budget_filter(const CatalogEntry& f, const CatalogEntry& p,
                                        long long n) {
  BudgetReport rep;
  std::ostringstream cert;

  // distinct cusp types of F with multiplicities
  std::vector<DecoratedSimplex> tile_types;
  std::vector<std::string> tile_names;
  std::vector<long long> tile_mult;
  for (const auto& fv : vertex_links(f.diagram)) {
    if (!fv.kind.parabolic()) continue;
    bool found = false;
    for (size_t t = 0; t < tile_types.size(); ++t)
      if (tile_types[t].canonical_key() == fv.canonical) {
        ++tile_mult[t];
        found = true;
      }
    if (!found) {
      tile_types.push_back(fv.link);
      auto c = recognize_components(fv.link);
      tile_names.push_back(c ? components_name(*c) : "?");
      tile_mult.push_back(1);
    }
  }

  struct PVertex {
    int vertex;
    std::string name;
    std::string key;
    std::vector<BudgetOption> options;
  };
  std::vector<PVertex> verts;
  long long ideal_f = 0;
  for (long long m : tile_mult) ideal_f += m;
  rep.supply_total = n * ideal_f;

  long long bound = 1LL << (p.dim - 1);  // self-similar Euclidean bound 2^(n-1)
  for (const auto& pv : vertex_links(p.diagram)) {
    if (!pv.kind.parabolic()) continue;
    PVertex v;
    v.vertex = pv.vertex;
    v.key = pv.canonical;
    auto c = recognize_components(pv.link);
    v.name = c ? components_name(*c) : "?";
    bool is_d4_star = c && c->size() == 1 && (*c)[0].fam == Family::AffD && (*c)[0].nodes == 5;
    for (size_t t = 0; t < tile_types.size(); ++t) {
      BudgetOption opt;
      opt.tile_type = static_cast<int>(t);
      if (tile_types[t].canonical_key() == pv.canonical) {
        opt.allow_one = true;
        opt.min_count = bound;  // rule self-similar
      } else if (euclidean_compatible(tile_types[t], pv.link)) {
        opt.allow_one = false;
        opt.min_count = is_d4_star ? 4 : 3;  // rules two-tiles and d4-triple
      } else {
        continue;  // rule incompatible-types
      }
      v.options.push_back(opt);
    }
    verts.push_back(std::move(v));
  }

  // aggregate bound first: total cusp demand against total supply
  long long min_total = 0;
  bool uncoverable = false;
  for (const auto& v : verts) {
    long long mn = -1;
    for (const auto& o : v.options) {
      long long m = o.allow_one ? 1 : o.min_count;
      if (mn < 0 || m < mn) mn = m;
    }
    if (mn < 0) {
      cert << "vertex " << v.vertex << " (" << v.name
           << "): no cusp type of F can cover it\n";
      uncoverable = true;
      mn = 0;
    }
    min_total += mn;
  }
  rep.demand_min_total = min_total;
  if (uncoverable) {
    rep.feasible = false;
    rep.certificates.push_back(cert.str());
    return rep;
  }
  if (min_total > rep.supply_total) {
    cert << "total: " << verts.size() << " ideal vertices need at least " << min_total
         << " tile cusps but " << n << " tiles supply only " << rep.supply_total << "\n";
  }

  // exhaustive search over per-vertex (type, count) assignments with exact
  // per-type conservation
  std::vector<long long> supply(tile_types.size());
  for (size_t t = 0; t < tile_types.size(); ++t) supply[t] = n * tile_mult[t];

  std::vector<VertexCover> chosen(verts.size());
  std::function<bool(size_t)> search = [&](size_t i) -> bool {
    if (i == verts.size()) {
      for (long long s : supply)
        if (s != 0) return false;
      return true;
    }
    const PVertex& v = verts[i];
    // remaining vertices can absorb at most (supply left) with c >= 1 each
    for (const auto& o : v.options) {
      std::vector<long long> counts;
      if (o.allow_one) counts.push_back(1);
      for (long long c = o.min_count; c <= supply[o.tile_type]; ++c) counts.push_back(c);
      for (long long c : counts) {
        if (c > supply[o.tile_type]) continue;
        supply[o.tile_type] -= c;
        chosen[i] = {v.vertex, v.name, tile_names[o.tile_type], c};
        if (search(i + 1)) return true;
        supply[o.tile_type] += c;
      }
    }
    return false;
  };
  rep.feasible = search(0);
  if (rep.feasible) {
    rep.assignment = chosen;
  } else {
    // per-type certificates in the style of the counting arguments
    for (size_t t = 0; t < tile_types.size(); ++t) {
      long long demand_vertices = 0;
      for (const auto& v : verts)
        for (const auto& o : v.options)
          if (o.tile_type == static_cast<int>(t)) ++demand_vertices;
      cert << "type " << tile_names[t] << ": " << n << " tiles supply "
           << n * tile_mult[t] << " cusps for " << demand_vertices
           << " compatible vertices of P\n";
    }
    rep.certificates.push_back(cert.str());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Pipeline driver.
// ---------------------------------------------------------------------------

enum class Stage { Volume, Subdiagram, Counting, Budget };

inline std::vector<CandidatePair> run_pipeline(int dim, Stage upto = Stage::Budget) {
  if (dim < 4 || dim > 9) throw std::out_of_range("dimension out of range");
  std::vector<CandidatePair> out;
  auto list = hyperbolic_simplices(dim);
  for (const auto& f : list)
    for (const auto& p : list) {
      if (f.notation == p.notation) continue;
      CandidatePair c;
      c.f = f.notation;
      c.p = p.notation;
      c.dim = dim;
      auto n = volume_filter(f, p);
      c.volume.pass = n.has_value();
      if (!n) {
        double ratio = p.volume / f.volume;
        std::ostringstream os;
        os << "volume ratio " << ratio << " is not an integer >= 2";
        c.volume.detail = os.str();
        continue;
      }
      c.n = *n;
      c.volume.detail = "N = " + std::to_string(c.n);
      if (upto == Stage::Volume) { out.push_back(c); continue; }
      c.subdiagram = subdiagram_filter(f, p);
      if (!c.subdiagram.pass) { out.push_back(c); continue; }
      if (upto == Stage::Subdiagram) { out.push_back(c); continue; }
      c.counting = counting_filter(f, p, c.n);
      if (!c.counting.pass) { out.push_back(c); continue; }
      if (upto == Stage::Counting) { out.push_back(c); continue; }
      c.budget = ideal_budget_filter(f, p, c.n);
      out.push_back(c);
    }
  return out;
}

// Candidates that survive the volume + subdiagram + counting filters.
inline std::vector<CandidatePair> surviving_pairs(int dim) {
  std::vector<CandidatePair> out;
  for (auto& c : run_pipeline(dim)) {
    if (c.surviving()) out.push_back(c);
  }
  return out;
}

}  // namespace coxdec
