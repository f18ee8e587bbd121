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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace coxdec {

inline constexpr double kPiValue = 3.14159265358979323846;

// A dihedral angle pi*num/den, kept in lowest terms with 0 < num < den.
// The right angle is {1,2}; a plain Coxeter label m is {1,m}.
struct Angle {
  int num = 1;
  int den = 2;

  Angle() = default;
  Angle(int n, int d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den < 0) { den = -den; num = -num; }
    int g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  bool right() const { return num == 1 && den == 2; }
  double radians() const { return kPiValue * num / den; }
  double value() const { return static_cast<double>(num) / den; }  // fraction of pi

  friend Angle operator+(Angle a, Angle b) {
    return Angle(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend bool operator==(const Angle& a, const Angle& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Angle& a, const Angle& b) { return !(a == b); }
  friend bool operator<(const Angle& a, const Angle& b) {
    return static_cast<long long>(a.num) * b.den < static_cast<long long>(b.num) * a.den;
  }
  friend bool operator<=(const Angle& a, const Angle& b) { return a < b || a == b; }
};

inline const Angle kRightAngle{1, 2};
inline const Angle kPi{1, 1};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int ln, const std::string& what)
      : std::runtime_error("line " + std::to_string(ln) + ": " + what), line(ln) {}
};

// An n-simplex described by the dihedral angles between its n+1 facets.
// Angles are exact rationals of pi; geometry is derived elsewhere.
class DecoratedSimplex {
 public:
  DecoratedSimplex() = default;
  explicit DecoratedSimplex(int dim)
      : dim_(dim), a_(dim + 1, std::vector<Angle>(dim + 1, kRightAngle)) {}

  int dim() const { return dim_; }
  int nodes() const { return dim_ + 1; }

  const Angle& angle(int i, int j) const { return a_[i][j]; }
  void set_angle(int i, int j, Angle v) {
    a_[i][j] = v;
    a_[j][i] = v;
  }

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  bool is_coxeter() const {
    for (int i = 0; i < nodes(); ++i)
      for (int j = i + 1; j < nodes(); ++j)
        if (a_[i][j].num != 1) return false;
    return true;
  }

  int edge_count() const {
    int c = 0;
    for (int i = 0; i < nodes(); ++i)
      for (int j = i + 1; j < nodes(); ++j)
        if (!a_[i][j].right()) ++c;
    return c;
  }

  int degree(int v) const {
    int d = 0;
    for (int j = 0; j < nodes(); ++j)
      if (j != v && !a_[v][j].right()) ++d;
    return d;
  }

  bool connected() const {
    int k = nodes();
    std::vector<bool> seen(k, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int cnt = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int j = 0; j < k; ++j)
        if (!seen[j] && !a_[v][j].right()) {
          seen[j] = true;
          ++cnt;
          stack.push_back(j);
        }
    }
    return cnt == k;
  }

  DecoratedSimplex remove_node(int v) const {
    if (v < 0 || v > dim_) throw std::out_of_range("node index out of range");
    DecoratedSimplex r(dim_ - 1);
    int ri = 0;
    for (int i = 0; i < nodes(); ++i) {
      if (i == v) continue;
      int rj = 0;
      for (int j = 0; j < nodes(); ++j) {
        if (j == v) continue;
        if (ri != rj) r.a_[ri][rj] = a_[i][j];
        ++rj;
      }
      ++ri;
    }
    return r;
  }

  DecoratedSimplex permuted(const std::vector<int>& perm) const {
    DecoratedSimplex r(dim_);
    r.name_ = name_;
    for (int i = 0; i < nodes(); ++i)
      for (int j = 0; j < nodes(); ++j)
        if (i != j) r.a_[perm[i]][perm[j]] = a_[i][j];
    return r;
  }

  // Induced subdiagram on the given node subset (order preserved).
  DecoratedSimplex induced(const std::vector<int>& keep) const {
    DecoratedSimplex r(static_cast<int>(keep.size()) - 1);
    for (size_t i = 0; i < keep.size(); ++i)
      for (size_t j = 0; j < keep.size(); ++j)
        if (i != j) r.a_[i][j] = a_[keep[i]][keep[j]];
    return r;
  }

  std::vector<std::vector<int>> components() const {
    int k = nodes();
    std::vector<int> comp(k, -1);
    int nc = 0;
    for (int s = 0; s < k; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<int> stack{s};
      comp[s] = nc;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int j = 0; j < k; ++j)
          if (comp[j] < 0 && !a_[v][j].right()) {
            comp[j] = nc;
            stack.push_back(j);
          }
      }
      ++nc;
    }
    std::vector<std::vector<int>> out(nc);
    for (int v = 0; v < k; ++v) out[comp[v]].push_back(v);
    return out;
  }

  std::string serialize() const {
    std::ostringstream os;
    os << "dim=" << dim_ << "\n";
    if (!name_.empty()) os << "name=" << name_ << "\n";
    for (int i = 0; i < nodes(); ++i)
      for (int j = i + 1; j < nodes(); ++j) {
        const Angle& x = a_[i][j];
        if (x.right()) continue;
        os << i << "-" << j << ":" << x.den;
        if (x.num != 1) os << "/" << x.num;
        os << "\n";
      }
    return os.str();
  }

  // A relabeling-invariant key; equal keys iff isomorphic diagrams.
  std::string canonical_key() const;

  friend bool operator==(const DecoratedSimplex& a, const DecoratedSimplex& b) {
    return a.dim_ == b.dim_ && a.a_ == b.a_;
  }

 private:
  int dim_ = 0;
  std::vector<std::vector<Angle>> a_;
  std::string name_;
};

// ---------------------------------------------------------------------------
// Parsing. Line-oriented: "dim=<n>", optional "name=...", edges "i-j:m" for
// angle pi/m or "i-j:m/k" for pi*k/m; '#' starts a comment.
// ---------------------------------------------------------------------------

inline DecoratedSimplex parse_diagram(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int ln = 0;
  std::optional<DecoratedSimplex> s;
  std::string pending_name;
  std::vector<std::pair<int, int>> seen_edges;
  while (std::getline(is, line)) {
    ++ln;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start])))
      ++start;
    line.erase(0, start);
    if (line.empty()) continue;

    if (line.rfind("dim=", 0) == 0) {
      int d;
      try {
        d = std::stoi(line.substr(4));
      } catch (...) {
        throw ParseError(ln, "bad dimension");
      }
      if (d < 1 || d > 20) throw ParseError(ln, "dimension out of range");
      s = DecoratedSimplex(d);
      if (!pending_name.empty()) s->set_name(pending_name);
      continue;
    }
    if (line.rfind("name=", 0) == 0) {
      if (s)
        s->set_name(line.substr(5));
      else
        pending_name = line.substr(5);
      continue;
    }
    // edge line
    if (!s) throw ParseError(ln, "edge before dim= header");
    int i, j, m, k = 1;
    char dash, colon;
    std::istringstream es(line);
    if (!(es >> i >> dash >> j >> colon >> m) || dash != '-' || colon != ':')
      throw ParseError(ln, "malformed edge '" + line + "'");
    char slash;
    if (es >> slash) {
      if (slash != '/' || !(es >> k)) throw ParseError(ln, "malformed edge '" + line + "'");
    }
    if (i < 0 || j < 0 || i > s->dim() || j > s->dim())
      throw ParseError(ln, "node index out of range");
    if (i == j) throw ParseError(ln, "self edge");
    if (k <= 0 || m < 2 || k >= m) throw ParseError(ln, "angle must lie strictly between 0 and pi");
    auto e = std::minmax(i, j);
    if (std::find(seen_edges.begin(), seen_edges.end(),
                  std::make_pair(e.first, e.second)) != seen_edges.end())
      throw ParseError(ln, "duplicate edge");
    seen_edges.push_back({e.first, e.second});
    s->set_angle(i, j, Angle(k, m));
  }
  if (!s) throw ParseError(ln, "missing dim= header");
  return *s;
}

// Convenience builder used by catalog data and tests.
inline DecoratedSimplex make_simplex(int dim,
                                     const std::vector<std::array<int, 3>>& edges_mk,
                                     const std::string& name = "") {
  DecoratedSimplex s(dim);
  for (const auto& e : edges_mk) s.set_angle(e[0], e[1], Angle(1, e[2]));
  if (!name.empty()) s.set_name(name);
  return s;
}

// ---------------------------------------------------------------------------
// Canonical form: order-minimizing search over node labelings, pruned by an
// iterated neighborhood-refinement coloring. Diagram sizes here stay <= 10
// nodes, so exhaustive search within color classes is cheap.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<int> refine_colors(const DecoratedSimplex& s) {
  int k = s.nodes();
  std::vector<long long> col(k);
  for (int v = 0; v < k; ++v) {
    std::vector<int> inc;
    for (int j = 0; j < k; ++j)
      if (j != v && !s.angle(v, j).right())
        inc.push_back(s.angle(v, j).den * 64 + s.angle(v, j).num);
    std::sort(inc.begin(), inc.end());
    long long h = 1469598103934665603LL;
    for (int x : inc) h = (h ^ x) * 1099511628211LL;
    col[v] = h;
  }
  for (int round = 0; round < k; ++round) {
    std::vector<long long> next(k);
    for (int v = 0; v < k; ++v) {
      std::vector<long long> inc;
      for (int j = 0; j < k; ++j)
        if (j != v && !s.angle(v, j).right())
          inc.push_back(col[j] * 131 + s.angle(v, j).den * 64 + s.angle(v, j).num);
      std::sort(inc.begin(), inc.end());
      long long h = col[v];
      for (long long x : inc) h = (h ^ x) * 1099511628211LL;
      next[v] = h;
    }
    if (next == col) break;
    col = next;
  }
  // compress to small ranks
  std::vector<long long> sorted = col;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> rank(k);
  for (int v = 0; v < k; ++v)
    rank[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), col[v]) -
                               sorted.begin());
  return rank;
}

struct CanonSearch {
  const DecoratedSimplex& s;
  int k;
  std::vector<int> colors;
  std::vector<int> twin_class;  // nodes with identical rows share a class
  std::vector<int> best;        // best[i] = original node placed at position i
  bool have_best = false;
  std::vector<int> cur;
  std::vector<bool> used;

  explicit CanonSearch(const DecoratedSimplex& sim)
      : s(sim), k(sim.nodes()), colors(refine_colors(sim)), twin_class(sim.nodes()),
        used(sim.nodes(), false) {
    // Swapping two nodes with identical angle rows is an automorphism, so only
    // the lowest unused member of each twin class needs to be tried.
    for (int v = 0; v < k; ++v) twin_class[v] = v;
    for (int v = 0; v < k; ++v)
      for (int w = 0; w < v; ++w) {
        bool twin = true;
        for (int x = 0; twin && x < k; ++x) {
          if (x == v || x == w) continue;
          twin = s.angle(v, x) == s.angle(w, x);
        }
        if (twin) {
          twin_class[v] = twin_class[w];
          break;
        }
      }
  }

  // compare partial/full orderings lexicographically over the upper triangle
  int compare_prefix(const std::vector<int>& order, const std::vector<int>& ref,
                     int upto) const {
    for (int j = 1; j < upto; ++j)
      for (int i = 0; i < j; ++i) {
        const Angle& x = s.angle(order[i], order[j]);
        const Angle& y = s.angle(ref[i], ref[j]);
        long long xv = static_cast<long long>(x.den) * 1024 + x.num;
        long long yv = static_cast<long long>(y.den) * 1024 + y.num;
        // right angles (absent edges) sort after real edges of any label
        if (x.right()) xv = 1LL << 40;
        if (y.right()) yv = 1LL << 40;
        if (xv != yv) return xv < yv ? -1 : 1;
      }
    return 0;
  }

  void run() {
    cur.clear();
    dfs();
  }

  void dfs() {
    int pos = static_cast<int>(cur.size());
    if (pos == k) {
      if (!have_best || compare_prefix(cur, best, k) < 0) {
        best = cur;
        have_best = true;
      }
      return;
    }
    std::vector<bool> class_tried(k, false);
    for (int v = 0; v < k; ++v) {
      if (used[v] || class_tried[twin_class[v]]) continue;
      class_tried[twin_class[v]] = true;
      cur.push_back(v);
      used[v] = true;
      bool ok = true;
      if (have_best) {
        int c = compare_prefix(cur, best, pos + 1);
        if (c > 0) ok = false;
      }
      if (ok) dfs();
      used[v] = false;
      cur.pop_back();
    }
  }
};

}  // namespace detail

struct CanonicalForm {
  DecoratedSimplex diagram;      // the representative
  std::vector<int> permutation;  // permutation[i] = position of original node i
};

inline CanonicalForm canonical_form(const DecoratedSimplex& s) {
  detail::CanonSearch cs(s);
  cs.run();
  std::vector<int> perm(s.nodes());
  for (int pos = 0; pos < s.nodes(); ++pos) perm[cs.best[pos]] = pos;
  CanonicalForm f;
  f.permutation = perm;
  f.diagram = s.permuted(perm);
  return f;
}

inline std::string DecoratedSimplex::canonical_key() const {
  DecoratedSimplex c = canonical_form(*this).diagram;
  std::ostringstream os;
  os << dim_ << ";";
  for (int i = 0; i < c.nodes(); ++i)
    for (int j = i + 1; j < c.nodes(); ++j) {
      const Angle& x = c.angle(i, j);
      if (!x.right()) os << i << "," << j << ":" << x.den << "/" << x.num << ";";
    }
  return os.str();
}

inline bool isomorphic(const DecoratedSimplex& a, const DecoratedSimplex& b) {
  if (a.dim() != b.dim()) return false;
  return a.canonical_key() == b.canonical_key();
}

}  // namespace coxdec
