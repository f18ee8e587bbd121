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

#include "coxdec/catalog.hpp"
#include "coxdec/geometry.hpp"
#include "doctest.h"

using namespace coxdec;

namespace {

std::mt19937& rng() {
  static std::mt19937 gen([] {
    const char* s = std::getenv("COXDEC_SEED");
    return s ? static_cast<unsigned>(std::atoi(s)) : 907u;
  }());
  return gen;
}

Vec random_vec(int size) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Vec v(size);
  for (double& x : v) x = d(rng());
  return v;
}

// Sign pattern of the leading principal minors, an eigenvalue-free route to
// the signature of a symmetric matrix. Counting sign changes on copies
// shifted by +/- epsilon resolves exact zero minors: eigenvalues below
// -epsilon show up in the +shift count, eigenvalues below +epsilon in the
// -shift count, so the difference counts the (near-)zero eigenvalues.
GeometryKind classify_by_minors(const Mat& g) {
  auto sign_changes = [](Mat m) {
    int n = m.rows(), changes = 0;
    double prev = 1.0;
    for (int s = 1; s <= n; ++s) {
      Mat lead(s, s);
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) lead(i, j) = m(i, j);
      double d = det(lead);
      if (d * prev < 0) ++changes;
      if (d != 0.0) prev = d;
    }
    return changes;
  };
  const double eps = 1e-6;
  Mat up = g, down = g;
  for (int i = 0; i < g.rows(); ++i) {
    up(i, i) += eps;
    down(i, i) -= eps;
  }
  GeometryKind k;
  k.negatives = sign_changes(up);
  k.zeros = sign_changes(down) - k.negatives;
  if (k.negatives == 0 && k.zeros == 0) k.kind = Geometry::Elliptic;
  else if (k.negatives == 0) { k.kind = Geometry::Parabolic; k.corank = k.zeros; }
  else if (k.negatives == 1 && k.zeros == 0) k.kind = Geometry::Hyperbolic;
  else k.kind = Geometry::Invalid;
  return k;
}

}  // namespace

TEST_CASE("gram_of: exact entries") {
  DecoratedSimplex s(4);
  GramMatrix g = gram_of(s);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(g.m(i, j) == (i == j ? 1.0 : 0.0));

  s.set_angle(0, 1, Angle(1, 3));
  s.set_angle(1, 2, Angle(2, 3));
  s.set_angle(2, 3, Angle(1, 5));
  g = gram_of(s);
  CHECK(g.m(0, 1) == -0.5);
  CHECK(g.m(1, 2) == 0.5);
  CHECK(g.entry_exact(0, 1));
  CHECK(g.entry_exact(1, 2));
  CHECK(g.entry_exact(0, 3));       // right angle
  CHECK_FALSE(g.entry_exact(2, 3));  // cos(pi/5) is irrational
}

TEST_CASE("classify: elliptic, parabolic and hyperbolic samples") {
  // A4: path of four nodes, all edges 3
  DecoratedSimplex a4 = make_simplex(3, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}});
  CHECK(classify(a4).elliptic());

  // affine ~A3: 4-cycle
  DecoratedSimplex affA3 = make_simplex(3, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 0, 3}});
  GeometryKind k = classify(affA3);
  CHECK(k.parabolic());
  CHECK(k.corank == 1);

  for (const auto& e : all_simplices()) {
    INFO("entry ", e.notation);
    CHECK(classify(e.diagram).hyperbolic());
  }

  // an indefinite diagram: two disjoint all-6 triangles, each contributing a
  // negative direction, so the signature is (4,2)
  DecoratedSimplex bad(5);
  bad.set_angle(0, 1, Angle(1, 6));
  bad.set_angle(1, 2, Angle(1, 6));
  bad.set_angle(2, 0, Angle(1, 6));
  bad.set_angle(3, 4, Angle(1, 6));
  bad.set_angle(4, 5, Angle(1, 6));
  bad.set_angle(5, 3, Angle(1, 6));
  CHECK(classify(bad).kind == Geometry::Invalid);
  CHECK(classify(bad).negatives == 2);
}

TEST_CASE("classify agrees with the leading-minor oracle on the catalog") {
  for (const auto& e : all_simplices()) {
    GramMatrix g = gram_of(e.diagram);
    CHECK(classify(g).kind == classify_by_minors(g.m).kind);
    for (int v = 0; v < e.diagram.nodes(); ++v) {
      GramMatrix sub = gram_of(e.diagram.remove_node(v));
      GeometryKind a = classify(sub);
      GeometryKind b = classify_by_minors(sub.m);
      CHECK(a.kind == b.kind);
    }
  }
}

TEST_CASE("classify is permutation invariant") {
  for (const char* name : {"H3^4", "H12^5", "H1^9"}) {
    const DecoratedSimplex& s = entry(name).diagram;
    std::vector<int> p(s.nodes());
    for (int i = 0; i < s.nodes(); ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng());
    CHECK(classify(s.permuted(p)).kind == classify(s).kind);
  }
}

TEST_CASE("realize: gram round-trip within tolerance on every catalog entry") {
  for (const auto& e : all_simplices()) {
    GramMatrix g = gram_of(e.diagram);
    Realization r = realize(g);
    for (int i = 0; i < g.size(); ++i)
      for (int j = 0; j < g.size(); ++j) {
        double ip = minkowski(r.normal(i), r.normal(j));
        CHECK(std::fabs(ip - g.m(i, j)) < tol_real());
      }
    // vertices: dual to the normals, correctly signed and normalized
    for (int j = 0; j < g.size(); ++j) {
      Vec v = r.vertex(j);
      for (int i = 0; i < g.size(); ++i) {
        double ip = minkowski(v, r.normal(i));
        if (i == j) CHECK(ip < 0);
        else CHECK(std::fabs(ip) < tol_real());
      }
      double n2 = minkowski(v, v);
      if (r.ideal[j]) CHECK(std::fabs(n2) < tol_real());
      else CHECK(n2 < 0);
    }
  }
}

TEST_CASE("realize: ideal vertex counts") {
  CHECK(realize(entry("H3^4").diagram).ideal_count() == 1);
  CHECK(realize(entry("H1^8").diagram).ideal_count() == 1);
  CHECK(realize(entry("H11^5").diagram).ideal_count() == 5);
  CHECK(realize(entry("H1^(4)").diagram).ideal_count() == 0);
  CHECK_THROWS(realize(make_simplex(3, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}})));
}

TEST_CASE("realization is reproducible") {
  Realization a = realize(entry("H9^4").diagram);
  Realization b = realize(entry("H9^4").diagram);
  for (int i = 0; i < a.normals.rows(); ++i)
    for (int j = 0; j < a.normals.cols(); ++j)
      CHECK(a.normals(i, j) == b.normals(i, j));
}

TEST_CASE("facet_gram: right-angled corner and congruence basics") {
  DecoratedSimplex box(4);
  GramMatrix fg = facet_gram(gram_of(box), 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(fg.m(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));

  // facet sections of catalog simplices stay elliptic or parabolic per vertex
  const DecoratedSimplex& h64 = entry("H6^4").diagram;
  GramMatrix g = gram_of(h64);
  for (int i = 0; i < g.size(); ++i) {
    GeometryKind k = classify(facet_gram(g, i));
    CHECK((k.elliptic() || k.parabolic() || k.hyperbolic()));
  }
}

TEST_CASE("reflections: involution and form preservation") {
  Realization r = realize(entry("H1^8").diagram);
  for (int i = 0; i < r.normals.rows(); ++i) {
    Vec u = r.normal(i);
    // reflect(u, u) = -u
    Vec mu = reflect(u, u);
    for (size_t c = 0; c < u.size(); ++c) CHECK(mu[c] == doctest::Approx(-u[c]));
    for (int trial = 0; trial < 12; ++trial) {
      Vec x = random_vec(static_cast<int>(u.size()));
      Vec y = random_vec(static_cast<int>(u.size()));
      Vec rx = reflect(u, x), ry = reflect(u, y);
      CHECK(std::fabs(minkowski(rx, ry) - minkowski(x, y)) < 1e-7);
      Vec rrx = reflect(u, rx);
      for (size_t c = 0; c < x.size(); ++c) CHECK(rrx[c] == doctest::Approx(x[c]));
    }
  }
  // fixed vectors on the mirror
  Vec u = r.normal(0);
  Vec x = random_vec(static_cast<int>(u.size()));
  double c = minkowski(x, u);
  for (size_t i = 0; i < x.size(); ++i) x[i] -= c * u[i];  // project onto mirror
  Vec rx = reflect(u, x);
  for (size_t i = 0; i < x.size(); ++i) CHECK(rx[i] == doctest::Approx(x[i]).epsilon(1e-9));
}

TEST_CASE("vertex links match the realization's ideal flags") {
  for (const char* name : {"H3^4", "H9^4", "H4^8", "H11^5", "H3^9"}) {
    const DecoratedSimplex& s = entry(name).diagram;
    Realization r = realize(s);
    auto links = vertex_links(s);
    for (const auto& vl : links) CHECK(vl.kind.parabolic() == r.ideal[vl.vertex]);
  }
}
