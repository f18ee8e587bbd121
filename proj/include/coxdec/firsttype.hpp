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

#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "catalog.hpp"
#include "diagram.hpp"
#include "geometry.hpp"
#include "verifier.hpp"

namespace coxdec {

// ---------------------------------------------------------------------------
// Gluing two decorated simplices along congruent facets.
//
// Facet i of `a` is identified with facet j of `b` under a facet bijection.
// The union is a simplex iff the two dihedral angles along the glued facet
// sum to pi at exactly n-1 ridges (those facet pairs merge into a single
// hyperplane) and to less than pi at exactly one ridge (the new dihedral
// angle). Merged facets must agree on their mutual angles, and the glued
// facet sections must be congruent.
// ---------------------------------------------------------------------------

struct GlueResult {
  DecoratedSimplex shape;        // construction-order diagram
  std::vector<int> phi_left;     // facet of a -> construction facet (-1 for i)
  std::vector<int> phi_right;    // facet of b -> construction facet (-1 for j)
  int rstar_left = -1, rstar_right = -1;
};

namespace detail {

// All bijections matching two facet-section Gram matrices entrywise.
inline void section_bijections(const Mat& ga, const Mat& gb,
                               std::vector<std::vector<int>>& out) {
  int n = ga.rows();
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<void(int)> rec = [&](int r) {
    if (r == n) {
      out.push_back(map);
      return;
    }
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      bool ok = true;
      for (int x = 0; ok && x < r; ++x)
        ok = std::fabs(ga(r, x) - gb(c, map[x])) < 1e-7;
      if (!ok) continue;
      used[c] = true;
      map[r] = c;
      rec(r + 1);
      used[c] = false;
      map[r] = -1;
    }
  };
  rec(0);
}

}  // namespace detail

inline std::vector<GlueResult> glue(const DecoratedSimplex& a, int i,
                                    const DecoratedSimplex& b, int j) {
  std::vector<GlueResult> out;
  int n = a.dim();
  if (b.dim() != n) return out;
  GramMatrix ga = gram_of(a), gb = gram_of(b);
  Mat fa, fb;
  try {
    fa = facet_gram(ga, i).m;
    fb = facet_gram(gb, j).m;
  } catch (const std::exception&) {
    return out;  // degenerate projection: facets cannot be identified
  }
  std::vector<int> la, lb;  // facet lists excluding the glued facet
  for (int r = 0; r <= n; ++r) {
    if (r != i) la.push_back(r);
    if (r != j) lb.push_back(r);
  }
  std::vector<std::vector<int>> maps;
  detail::section_bijections(fa, fb, maps);
  for (const auto& m : maps) {
    // angle sums along the glued facet
    int merged = 0, rstar = -1;
    bool ok = true;
    for (int r = 0; ok && r < n; ++r) {
      Angle sum = a.angle(i, la[r]) + b.angle(j, lb[m[r]]);
      if (sum == kPi) ++merged;
      else if (sum < kPi) {
        if (rstar >= 0) ok = false;
        rstar = r;
      } else {
        ok = false;  // reflex angle
      }
    }
    if (!ok || merged != n - 1 || rstar < 0) continue;
    // merged facets lie in common hyperplanes, so their mutual angles must
    // agree between the two halves
    for (int r = 0; ok && r < n; ++r) {
      if (r == rstar) continue;
      for (int s = r + 1; ok && s < n; ++s) {
        if (s == rstar) continue;
        ok = a.angle(la[r], la[s]) == b.angle(lb[m[r]], lb[m[s]]);
      }
    }
    if (!ok) continue;

    GlueResult g;
    g.shape = DecoratedSimplex(n);
    g.phi_left.assign(n + 1, -1);
    g.phi_right.assign(n + 1, -1);
    // construction order: merged facets in `a` order, then r* of a, then r* of b
    int idx = 0;
    for (int r = 0; r < n; ++r) {
      if (r == rstar) continue;
      g.phi_left[la[r]] = idx;
      g.phi_right[lb[m[r]]] = idx;
      ++idx;
    }
    g.rstar_left = la[rstar];
    g.rstar_right = lb[m[rstar]];
    int pl = idx, pr = idx + 1;
    g.phi_left[g.rstar_left] = pl;
    g.phi_right[g.rstar_right] = pr;
    // angles
    for (int r = 0; r < n; ++r) {
      if (r == rstar) continue;
      for (int s = r + 1; s < n; ++s)
        if (s != rstar)
          g.shape.set_angle(g.phi_left[la[r]], g.phi_left[la[s]], a.angle(la[r], la[s]));
      g.shape.set_angle(g.phi_left[la[r]], pl, a.angle(la[r], g.rstar_left));
      g.shape.set_angle(g.phi_left[la[r]], pr, b.angle(lb[m[r]], g.rstar_right));
    }
    g.shape.set_angle(pl, pr, a.angle(i, g.rstar_left) + b.angle(j, g.rstar_right));
    if (!classify(g.shape).hyperbolic()) continue;
    out.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration universe.
// ---------------------------------------------------------------------------

struct GlueWitness {
  int left = -1, right = -1;      // universe indices
  int i = -1, j = -1;             // glued facets (on the canonical diagrams)
  GlueResult build;               // construction data
  std::vector<int> to_canon;      // construction facet -> canonical facet
};

struct GeneratedSimplex {
  DecoratedSimplex diagram;       // canonical form
  std::string key;
  long long n = 1;
  int s = 0;
  std::vector<GlueWitness> witnesses;
  std::optional<bool> simple;     // filled on demand
};

struct EnumerationLimits {
  long long max_n = 200;
  int max_s = 10;
  size_t max_shapes = 10000;
};

class Universe {
 public:
  std::string fundamental;
  std::vector<GeneratedSimplex> items;
  bool complete = true;

  const GeneratedSimplex* find_shape(const DecoratedSimplex& d) const {
    auto it = index_.find(d.canonical_key());
    return it == index_.end() ? nullptr : &items[it->second];
  }
  int find_index(const std::string& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? -1 : it->second;
  }

  // Returns the index of the inserted or existing item; aborts on an N clash
  // (the shape of a simplex determines its volume, hence its tile count).
  int insert(GeneratedSimplex&& g) {
    auto it = index_.find(g.key);
    if (it != index_.end()) {
      GeneratedSimplex& old = items[it->second];
      if (old.n != g.n)
        throw std::logic_error("one shape produced with two tile counts: " + g.key);
      if (!g.witnesses.empty() && old.witnesses.size() < 8)
        old.witnesses.push_back(g.witnesses.front());
      if (g.s < old.s) old.s = g.s;
      return it->second;
    }
    index_[g.key] = static_cast<int>(items.size());
    items.push_back(std::move(g));
    return static_cast<int>(items.size()) - 1;
  }

 private:
  std::map<std::string, int> index_;
};

// Breadth-first closure of {F} under gluing, deduplicated by canonical form.
// The task list of each wave is processed by `workers` threads; results are
// merged in task order, so the final set does not depend on scheduling.
inline Universe enumerate_decompositions(const DecoratedSimplex& fundamental,
                                         const EnumerationLimits& limits = {},
                                         int workers = 1,
                                         const std::string& name = "") {
  Universe u;
  u.fundamental = name.empty() ? fundamental.name() : name;
  GeneratedSimplex seed;
  seed.diagram = canonical_form(fundamental).diagram;
  seed.key = seed.diagram.canonical_key();
  seed.n = 1;
  seed.s = 0;
  u.insert(std::move(seed));

  struct Task {
    int x, y;
  };
  std::vector<Task> wave{{0, 0}};
  std::atomic<bool> capped{false};

  while (!wave.empty()) {
    // results per task, merged in order afterwards
    struct Produced {
      GlueWitness witness;
      DecoratedSimplex canon;
      std::string key;
      long long n;
      int s;
    };
    std::vector<std::vector<Produced>> results(wave.size());
    std::atomic<size_t> next{0};
    auto run = [&]() {
      while (true) {
        size_t t = next.fetch_add(1);
        if (t >= wave.size()) break;
        const Task& task = wave[t];
        const GeneratedSimplex a = u.items[task.x];
        const GeneratedSimplex b = u.items[task.y];
        if (a.n + b.n > limits.max_n) {
          capped = true;
          continue;
        }
        for (int i = 0; i <= a.diagram.dim(); ++i)
          for (int j = 0; j <= b.diagram.dim(); ++j) {
            for (GlueResult& g : glue(a.diagram, i, b.diagram, j)) {
              Produced p;
              CanonicalForm cf = canonical_form(g.shape);
              p.canon = cf.diagram;
              p.key = p.canon.canonical_key();
              p.n = a.n + b.n;
              p.s = 1 + std::max(a.s, b.s);
              p.witness.left = task.x;
              p.witness.right = task.y;
              p.witness.i = i;
              p.witness.j = j;
              p.witness.build = std::move(g);
              p.witness.to_canon = cf.permutation;
              results[t].push_back(std::move(p));
            }
          }
      }
    };
    if (workers <= 1) {
      run();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(run);
      for (auto& th : pool) th.join();
    }

    size_t before = u.items.size();
    for (auto& rs : results)
      for (auto& p : rs) {
        if (p.s > limits.max_s) {
          u.complete = false;
          continue;
        }
        GeneratedSimplex g;
        g.diagram = std::move(p.canon);
        g.key = std::move(p.key);
        g.n = p.n;
        g.s = p.s;
        g.witnesses.push_back(std::move(p.witness));
        u.insert(std::move(g));
        if (u.items.size() > limits.max_shapes) {
          u.complete = false;
          return u;
        }
      }
    // next wave: every pair with at least one new member
    wave.clear();
    for (size_t x = before; x < u.items.size(); ++x)
      for (size_t y = 0; y <= x; ++y) wave.push_back({static_cast<int>(x), static_cast<int>(y)});
  }
  if (capped) u.complete = false;
  return u;
}

inline Universe enumerate_decompositions(const CatalogEntry& f,
                                         const EnumerationLimits& limits = {},
                                         int workers = 1) {
  return enumerate_decompositions(f.diagram, limits, workers, f.notation);
}

// ---------------------------------------------------------------------------
// Materialization: tiles of a generated decomposition in the coordinates of
// its own canonical realization, derived from the witness glue tree.
// ---------------------------------------------------------------------------

class Materializer {
 public:
  explicit Materializer(const Universe& u) : u_(u) {}

  const std::vector<Tile>& tiles(int idx, int witness = 0) {
    auto it = cache_.find({idx, witness});
    if (it != cache_.end()) return it->second;
    return cache_.emplace(std::make_pair(idx, witness), build(idx, witness)).first->second;
  }

  const Realization& realization(int idx) {
    auto it = real_.find(idx);
    if (it != real_.end()) return it->second;
    return real_.emplace(idx, realize(u_.items[idx].diagram)).first->second;
  }

  // hyperplanes carrying tile facets but no facet of the ambient simplex
  std::vector<Vec> mirrors(int idx, int witness = 0) {
    const Realization& r = realization(idx);
    std::set<std::string> pplanes;
    int size = r.normals.rows();
    for (int f = 0; f < size; ++f) pplanes.insert(detail::plane_key(r.normal(f)));
    std::set<std::string> seen;
    std::vector<Vec> out;
    for (const Tile& t : tiles(idx, witness))
      for (int f = 0; f < size; ++f) {
        Vec n = t.normals.row(f);
        std::string k = detail::plane_key(n);
        if (pplanes.count(k) || !seen.insert(k).second) continue;
        out.push_back(n);
      }
    return out;
  }

 private:
  std::vector<Tile> build(int idx, int witness) {
    const GeneratedSimplex& item = u_.items[idx];
    if (item.witnesses.empty()) return {tile_of(realization(idx))};
    const GlueWitness& w = item.witnesses[std::min<size_t>(witness, item.witnesses.size() - 1)];
    const Realization& target = realization(idx);
    int size = target.normals.rows();

    auto embed = [&](int part, const std::vector<int>& phi, int glued_facet,
                     int opposite_construction_facet) {
      // normals of the part's realization map onto target facet normals;
      // the glued facet maps onto the interior wall, solved from its
      // prescribed inner products and pinned by the part's own vertex side.
      const Realization& rp = realization(part);
      GramMatrix gp = gram_of(u_.items[part].diagram);
      std::vector<Vec> matched;
      Vec products;
      std::vector<int> part_facets;
      for (int r = 0; r < size; ++r) {
        if (r == glued_facet) continue;
        part_facets.push_back(r);
        matched.push_back(target.normal(w.to_canon[phi[r]]));
        products.push_back(gp.m(glued_facet, r));
      }
      auto ys = detail::unit_normal_solutions(matched, products);
      // disambiguate: the image of the part's vertex opposite the glued facet
      // is the target vertex opposite `opposite_construction_facet`, and it
      // lies strictly inside the wall's half-space
      Vec pinned = target.vertex(w.to_canon[opposite_construction_facet]);
      Mat a;
      bool have = false;
      for (const Vec& y : ys) {
        if (minkowski(pinned, y) >= 0) continue;
        Mat src(size, size), img(size, size);
        for (int c = 0; c < size - 1; ++c)
          for (int rr = 0; rr < size; ++rr) {
            src(rr, c) = rp.normals(part_facets[c], rr);
            img(rr, c) = matched[c][rr];
          }
        for (int rr = 0; rr < size; ++rr) {
          src(rr, size - 1) = rp.normals(glued_facet, rr);
          img(rr, size - 1) = y[rr];
        }
        a = img * inverse(src);
        have = true;
        break;
      }
      if (!have) throw std::runtime_error("materialize: no admissible wall orientation");
      return a;
    };

    Mat al = embed(w.left, w.build.phi_left, w.i, w.build.phi_right[w.build.rstar_right]);
    Mat ar = embed(w.right, w.build.phi_right, w.j, w.build.phi_left[w.build.rstar_left]);

    auto apply = [&](const Mat& a, const std::vector<Tile>& src) {
      std::vector<Tile> out;
      for (const Tile& t : src) {
        Tile nt = t;
        for (int r = 0; r < size; ++r) {
          Vec un(size, 0.0), vx(size, 0.0);
          for (int c = 0; c < size; ++c)
            for (int k = 0; k < size; ++k) {
              un[c] += a(c, k) * t.normals(r, k);
              vx[c] += a(c, k) * t.vertices(r, k);
            }
          detail::normalize_vertex(vx, t.ideal[r]);
          for (int c = 0; c < size; ++c) {
            nt.normals(r, c) = un[c];
            nt.vertices(r, c) = vx[c];
          }
        }
        nt.rekey();
        out.push_back(std::move(nt));
      }
      return out;
    };

    std::vector<Tile> all = apply(al, tiles(w.left));
    std::vector<Tile> right = apply(ar, tiles(w.right));
    std::set<std::string> keys;
    for (const Tile& t : all) keys.insert(t.key);
    for (Tile& t : right) {
      if (!keys.insert(t.key).second)
        throw std::logic_error("materialize: halves overlap");
      all.push_back(std::move(t));
    }
    if (static_cast<long long>(all.size()) != item.n)
      throw std::logic_error("materialize: tile count mismatch");
    return all;
  }

  const Universe& u_;
  std::map<std::pair<int, int>, std::vector<Tile>> cache_;
  std::map<int, Realization> real_;
};

// ---------------------------------------------------------------------------
// Simplicity. A decomposition is simple when it is not a superposition: no
// intermediate shape T from the universe partitions its tiles into congruent
// T-copies related by reflections in their walls.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::vector<int>> diagram_automorphisms(const DecoratedSimplex& d) {
  return link_isomorphisms(d, d);
}

// Indices of the tiles lying inside the convex region cut out by the rows of
// `planes` (outward normals), or nullopt if a tile straddles the region.
inline std::optional<std::vector<int>> tiles_in_region(const std::vector<Tile>& tiles,
                                                       const Mat& planes) {
  std::vector<int> in;
  for (size_t t = 0; t < tiles.size(); ++t) {
    int inside_v = 0, total = tiles[t].vertices.rows();
    for (int v = 0; v < total; ++v) {
      bool ok = true;
      for (int f = 0; f < planes.rows(); ++f)
        if (minkowski(tiles[t].vertices.row(v), planes.row(f)) > 1e-6) ok = false;
      inside_v += ok;
    }
    if (inside_v == total) in.push_back(static_cast<int>(t));
  }
  return in;
}

}  // namespace detail

// Does the decomposition `idx` coarsen to a decomposition by shape `t_idx`?
// Candidate placements anchor some tile of one of T's recorded tilings onto
// tile 0 of d; every distinct witness tiling of T contributes anchors, since
// the copy of T containing tile 0 may be tiled differently inside.
inline bool admits_coarsening(Materializer& mat, const Universe& u, int idx, int t_idx) {
  const GeneratedSimplex& d = u.items[idx];
  const GeneratedSimplex& t = u.items[t_idx];
  if (t.n < 2 || t.n >= d.n || d.n % t.n != 0) return false;
  const std::vector<Tile>& tiles = mat.tiles(idx);
  std::map<std::string, int> tile_at;
  for (size_t k = 0; k < tiles.size(); ++k) tile_at[tiles[k].key] = static_cast<int>(k);

  const Realization& rt = mat.realization(t_idx);
  int size = rt.normals.rows();
  std::vector<Tile> t_tiles;
  {
    std::set<std::string> seen;
    size_t nw = std::max<size_t>(1, u.items[t_idx].witnesses.size());
    for (size_t w = 0; w < nw; ++w)
      for (const Tile& tile : mat.tiles(t_idx, static_cast<int>(w)))
        if (seen.insert(tile.key).second) t_tiles.push_back(tile);
  }
  auto autos = detail::diagram_automorphisms(u.items[0].diagram);

  const Tile& anchor = tiles[0];
  for (const Tile& alpha : t_tiles) {
    for (const auto& g : autos) {
      // A maps alpha's facet r onto anchor's facet g[r]
      Mat src(size, size), img(size, size);
      for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) {
          src(c, r) = alpha.normals(r, c);
          img(c, r) = anchor.normals(g[r], c);
        }
      Mat a;
      try {
        a = img * inverse(src);
      } catch (const std::exception&) {
        continue;
      }
      // image of T's bounding simplex
      Mat region(size, size);
      for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) {
          double s = 0;
          for (int k = 0; k < size; ++k) s += a(c, k) * rt.normals(r, k);
          region(r, c) = s;
        }
      auto first = detail::tiles_in_region(tiles, region);
      if (!first || static_cast<long long>(first->size()) != t.n) continue;

      // propagate copies by reflecting regions across their walls
      std::vector<Mat> copies{region};
      std::vector<std::vector<int>> members{*first};
      std::set<std::string> copy_keys;
      std::vector<bool> claimed(tiles.size(), false);
      auto region_key = [&](const Mat& reg) {
        std::vector<std::string> rows;
        for (int r = 0; r < reg.rows(); ++r) rows.push_back(detail::plane_key(reg.row(r)));
        std::sort(rows.begin(), rows.end());
        std::string k;
        for (auto& s : rows) k += s + "|";
        return k;
      };
      copy_keys.insert(region_key(region));
      for (int m : *first) claimed[m] = true;
      bool bad = false;
      size_t head = 0;
      while (head < copies.size() && !bad) {
        Mat reg = copies[head];
        std::vector<int> mem = members[head];
        ++head;
        for (int f = 0; f < size && !bad; ++f) {
          Vec wall = reg.row(f);
          // skip walls on the boundary of the ambient simplex
          const Realization& rd = mat.realization(idx);
          bool on_boundary = false;
          for (int pf = 0; pf < size; ++pf)
            if (detail::plane_key(rd.normal(pf)) == detail::plane_key(wall))
              on_boundary = true;
          if (on_boundary) continue;
          // reflected copy
          Mat reg2(size, size);
          for (int r = 0; r < size; ++r) {
            Vec row = reflect(wall, reg.row(r));
            for (int c = 0; c < size; ++c) reg2(r, c) = row[c];
          }
          if (!copy_keys.insert(region_key(reg2)).second) continue;
          // members must be the mirror images of this copy's members
          std::vector<int> mem2;
          for (int m : mem) {
            Tile rt2 = reflect_tile(tiles[m], wall);
            auto it = tile_at.find(rt2.key);
            if (it == tile_at.end()) {
              bad = true;
              break;
            }
            mem2.push_back(it->second);
          }
          if (bad) break;
          for (int m : mem2) {
            if (claimed[m]) {
              bad = true;  // overlapping copies
              break;
            }
            claimed[m] = true;
          }
          if (bad) break;
          copies.push_back(reg2);
          members.push_back(mem2);
        }
      }
      if (bad) continue;
      bool all = true;
      for (bool c : claimed) all &= c;
      if (all && copies.size() * t.n == static_cast<size_t>(d.n)) return true;
    }
  }
  return false;
}

inline bool is_simple(Materializer& mat, const Universe& u, int idx) {
  const GeneratedSimplex& d = u.items[idx];
  if (d.n <= 1) return false;  // trivial decompositions are not counted
  if (d.n == 2) return true;   // nothing fits strictly between F and P
  for (int t = 1; t < static_cast<int>(u.items.size()); ++t) {
    if (t == idx) continue;
    const GeneratedSimplex& cand = u.items[t];
    if (cand.n < 2 || cand.n >= d.n || d.n % cand.n != 0) continue;
    // the copies of T are tiles of the coarser decomposition, so T itself
    // must be a Coxeter simplex; decorated intermediates do not count
    if (!cand.diagram.is_coxeter()) continue;
    if (admits_coarsening(mat, u, idx, t)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Decomposition type per the three-way classification: first when produced
// by the inductive algorithm, second when every dihedral angle of the target
// is fundamental, third otherwise.
// ---------------------------------------------------------------------------

enum class DecompositionType { First, Second, Third };

inline DecompositionType classify_type(bool has_glue_witness, bool all_ridges_fundamental) {
  if (all_ridges_fundamental) return DecompositionType::Second;
  if (has_glue_witness) return DecompositionType::First;
  return DecompositionType::Third;
}

// Convenience: reproduce one published first-type row. Returns the universe
// index of the row's target shape if the enumeration contains a simple
// decomposition with the expected tile count.
struct RowCheck {
  bool found = false;
  bool n_matches = false;
  bool simple = false;
  long long n_found = -1;
};

inline RowCheck check_first_type_row(const GoldenRow& row,
                                     std::map<std::string, Universe>& cache,
                                     long long max_n_hint = 0) {
  RowCheck rc;
  const CatalogEntry& f = entry(row.f);
  const CatalogEntry& p = entry(row.p);
  auto it = cache.find(row.f);
  if (it == cache.end()) {
    EnumerationLimits lim;
    long long cap = max_n_hint;
    if (cap == 0) {
      for (const auto& r : golden_first_type())
        if (r.f == row.f) cap = std::max<long long>(cap, r.n);
    }
    lim.max_n = cap;
    lim.max_s = 12;
    it = cache.emplace(row.f, enumerate_decompositions(f, lim)).first;
  }
  Universe& u = it->second;
  int idx = u.find_index(p.diagram.canonical_key());
  if (idx < 0) return rc;
  rc.found = true;
  rc.n_found = u.items[idx].n;
  rc.n_matches = rc.n_found == row.n;
  if (rc.n_matches) {
    Materializer mat(u);
    rc.simple = is_simple(mat, u, idx);
  }
  return rc;
}

}  // namespace coxdec
