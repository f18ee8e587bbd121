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
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "families.hpp"
#include "linalg.hpp"

namespace coxdec {

// Tolerances. Eigenvalue gaps of the catalog Gram matrices sit far above
// these; overridable through the environment for experiments.
inline double tol_eig() {
  static double v = [] {
    const char* e = std::getenv("COXDEC_TOL_EIG");
    return e ? std::atof(e) : 1e-9;
  }();
  return v;
}

inline double tol_real() {
  static double v = [] {
    const char* e = std::getenv("COXDEC_TOL_REAL");
    return e ? std::atof(e) : 1e-7;
  }();
  return v;
}

constexpr double kSnapGrid = 1e-6;

enum class Geometry { Elliptic, Parabolic, Hyperbolic, Invalid };

struct GeometryKind {
  Geometry kind = Geometry::Invalid;
  int corank = 0;      // for Parabolic
  int negatives = 0;   // eigenvalue signs, for diagnostics
  int zeros = 0;

  bool elliptic() const { return kind == Geometry::Elliptic; }
  bool parabolic() const { return kind == Geometry::Parabolic; }
  bool hyperbolic() const { return kind == Geometry::Hyperbolic; }
};

inline std::string to_string(const GeometryKind& g) {
  switch (g.kind) {
    case Geometry::Elliptic: return "elliptic";
    case Geometry::Parabolic: return "parabolic(corank " + std::to_string(g.corank) + ")";
    case Geometry::Hyperbolic: return "hyperbolic";
    default:
      return "invalid(signature " + std::to_string(g.negatives) + " negative, " +
             std::to_string(g.zeros) + " zero)";
  }
}

// Gram matrix of unit outward facet normals: G(i,i) = 1, G(i,j) = -cos(angle).
// Entries coming from the angles pi/2, pi/3 and 2pi/3 are exact rationals
// (0 and +-1/2) and are flagged as such.
struct GramMatrix {
  int dim = 0;  // simplex dimension n; matrix is (n+1) x (n+1)
  Mat m;
  std::vector<std::vector<bool>> exact;

  int size() const { return dim + 1; }
  bool entry_exact(int i, int j) const { return exact[i][j]; }
};

inline GramMatrix gram_of(const DecoratedSimplex& s) {
  GramMatrix g;
  g.dim = s.dim();
  g.m = Mat(g.size(), g.size());
  g.exact.assign(g.size(), std::vector<bool>(g.size(), false));
  for (int i = 0; i < g.size(); ++i) {
    g.m(i, i) = 1.0;
    g.exact[i][i] = true;
    for (int j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      const Angle& a = s.angle(i, j);
      double c;
      if (a.right()) {
        c = 0.0;  // cos(pi/2)
        g.exact[i][j] = true;
      } else if (a.num == 1 && a.den == 3) {
        c = 0.5;  // cos(pi/3)
        g.exact[i][j] = true;
      } else if (a.num == 2 && a.den == 3) {
        c = -0.5;
        g.exact[i][j] = true;
      } else {
        c = std::cos(a.radians());
      }
      g.m(i, j) = -c;
    }
  }
  return g;
}

inline GeometryKind classify(const GramMatrix& g) {
  EigenSym e = eigen_sym(g.m);
  GeometryKind k;
  for (double v : e.values) {
    if (v < -tol_eig()) ++k.negatives;
    else if (v < tol_eig()) ++k.zeros;
  }
  if (k.negatives == 0 && k.zeros == 0) k.kind = Geometry::Elliptic;
  else if (k.negatives == 0) { k.kind = Geometry::Parabolic; k.corank = k.zeros; }
  else if (k.negatives == 1 && k.zeros == 0) k.kind = Geometry::Hyperbolic;
  else k.kind = Geometry::Invalid;
  return k;
}

inline GeometryKind classify(const DecoratedSimplex& s) { return classify(gram_of(s)); }

// Snap near-special inner products onto their exact values so that long
// reflection orbits hash stably.
inline double snap_inner(double x) {
  static const double specials[] = {0.0, 0.5,  -0.5, 1.0, -1.0,
                                    std::sqrt(0.5), -std::sqrt(0.5),
                                    std::cos(kPiValue / 5), -std::cos(kPiValue / 5),
                                    std::cos(2 * kPiValue / 5), -std::cos(2 * kPiValue / 5),
                                    std::cos(kPiValue / 6), -std::cos(kPiValue / 6)};
  for (double s : specials)
    if (std::fabs(x - s) < 1e-6) return s;
  return x;
}

// A simplex realized in the Minkowski space R^{n,1} (time axis last).
// Row i of `normals` is the unit outward normal of facet i; row j of
// `vertices` is the vertex opposite facet j (unit timelike if finite,
// lightlike with last coordinate 1 if ideal).
struct Realization {
  int dim = 0;
  Mat normals;
  Mat vertices;
  std::vector<bool> ideal;

  Vec normal(int i) const { return normals.row(i); }
  Vec vertex(int j) const { return vertices.row(j); }
  int ideal_count() const {
    int c = 0;
    for (bool b : ideal) c += b;
    return c;
  }
};

inline Realization realize(const GramMatrix& g) {
  GeometryKind kind = classify(g);
  if (!kind.hyperbolic())
    throw std::runtime_error("realize: Gram matrix is not of signature (n,1)");
  int size = g.size();
  EigenSym e = eigen_sym(g.m);  // ascending: e.values[0] < 0 < rest
  // Fix the eigenvector gauge: make the first significant entry of each
  // eigenvector positive, and put the negative direction last.
  Mat u(size, size);
  // columns 0..n-1 from the positive eigenpairs, column n from the negative one
  for (int col = 0; col < size; ++col) {
    int src = (col == size - 1) ? 0 : col + 1;
    double s = std::sqrt(std::fabs(e.values[src]));
    int lead = 0;
    while (lead < size - 1 && std::fabs(e.vectors(lead, src)) < 1e-12) ++lead;
    double sign = e.vectors(lead, src) >= 0 ? 1.0 : -1.0;
    for (int i = 0; i < size; ++i) u(i, col) = sign * s * e.vectors(i, src);
  }

  Realization r;
  r.dim = g.dim;
  r.normals = u;  // row i = normal of facet i
  // orient the whole frame so the first normal's first coordinate is positive
  if (r.normals(0, 0) < 0)
    for (int i = 0; i < size; ++i) r.normals(i, 0) = -r.normals(i, 0);

  // Vertices: columns of eta * U^{-1} are dual to the normals. Vertex j is
  // the dual direction signed so it lies inside facet j's half-space.
  Mat w = inverse(r.normals);
  for (int i = 0; i < size; ++i) w(size - 1, i) = -w(size - 1, i);  // eta
  r.vertices = Mat(size, size);
  r.ideal.assign(size, false);
  int time_sign = 0;
  for (int j = 0; j < size; ++j) {
    Vec v(size);
    for (int i = 0; i < size; ++i) v[i] = -w(i, j);  // <v, u_j> = -1 < 0
    double norm2 = minkowski(v, v);
    if (norm2 < -tol_eig()) {
      double s = 1.0 / std::sqrt(-norm2);
      for (double& x : v) x *= s;
    } else if (norm2 <= tol_eig() * 100) {
      r.ideal[j] = true;
    } else {
      throw std::runtime_error("realize: vertex beyond infinity (not a simplex)");
    }
    int ts = v[size - 1] > 0 ? 1 : -1;
    if (time_sign == 0) time_sign = ts;
    else if (time_sign != ts)
      throw std::runtime_error("realize: vertices straddle the light cone");
    for (int i = 0; i < size; ++i) r.vertices(j, i) = v[i];
  }
  if (time_sign < 0) {
    // simplex ended up on the past sheet; flip time for the whole frame
    for (int i = 0; i < size; ++i) {
      r.normals(i, size - 1) = -r.normals(i, size - 1);
      r.vertices(i, size - 1) = -r.vertices(i, size - 1);
    }
  }
  for (int j = 0; j < size; ++j) {
    if (!r.ideal[j]) continue;
    double t = r.vertices(j, size - 1);
    if (std::fabs(t) < 1e-12)
      throw std::runtime_error("realize: degenerate ideal vertex");
    for (int i = 0; i < size; ++i) r.vertices(j, i) /= t;  // rays scaled to t = 1
  }
  return r;
}

inline Realization realize(const DecoratedSimplex& s) { return realize(gram_of(s)); }

// Gram matrix of the (n-1)-simplex cut out on facet hyperplane i, computed by
// projecting the other normals onto the hyperplane and renormalizing.
inline GramMatrix facet_gram(const GramMatrix& g, int i) {
  int size = g.size();
  GramMatrix f;
  f.dim = g.dim - 1;
  f.m = Mat(size - 1, size - 1);
  std::vector<int> idx;
  for (int j = 0; j < size; ++j)
    if (j != i) idx.push_back(j);
  for (int a = 0; a < size - 1; ++a) {
    double ga = g.m(idx[a], i);
    if (std::fabs(ga) >= 1.0 - 1e-12)
      throw std::runtime_error("facet_gram: degenerate projection");
    for (int b = 0; b < size - 1; ++b) {
      double gb = g.m(idx[b], i);
      double num = g.m(idx[a], idx[b]) - ga * gb;
      f.m(a, b) = num / std::sqrt((1.0 - ga * ga) * (1.0 - gb * gb));
    }
  }
  return f;
}

// Reflection in the hyperplane with unit spacelike normal u.
struct Reflection {
  Vec u;

  Vec operator()(const Vec& x) const {
    double c = 2.0 * minkowski(x, u);
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - c * u[i];
    return r;
  }
};

inline Vec reflect(const Vec& u, const Vec& x) { return Reflection{u}(x); }

// Vertex links: for each vertex (indexed by its opposite facet) the diagram
// obtained by deleting that node, together with its geometry kind.
struct VertexLink {
  int vertex = 0;
  GeometryKind kind;
  DecoratedSimplex link;
  std::string canonical;
};

inline std::vector<VertexLink> vertex_links(const DecoratedSimplex& s) {
  std::vector<VertexLink> out;
  for (int v = 0; v < s.nodes(); ++v) {
    VertexLink vl;
    vl.vertex = v;
    vl.link = s.remove_node(v);
    vl.kind = classify(vl.link);
    vl.canonical = vl.link.canonical_key();
    out.push_back(std::move(vl));
  }
  return out;
}

inline int ideal_vertex_count(const DecoratedSimplex& s) {
  int c = 0;
  for (int v = 0; v < s.nodes(); ++v)
    if (classify(s.remove_node(v)).parabolic()) ++c;
  return c;
}

}  // namespace coxdec
