#include "test_util.hpp"

#include "ribbon/enumerate.hpp"
#include "ribbon/plforms.hpp"

#include <random>

using namespace ribbon;

namespace {

Rational fact(int n) { return Rational(factorial(n)); }
// evaluated now, not as a lazy expression
Rational mag(const Rational& x) { return x < 0 ? Rational(-x) : x; }

MarkedMetricGraph marked_all_holes(const RibbonGraph& g) {
  MarkedGraph mg{g, {}};
  auto h = g.holes();
  for (int i = 0; i < h.size(); ++i) mg.marking["p" + std::to_string(i + 1)] = {MarkKind::Hole, h.cycles[i][0]};
  return with_unit_lengths(mg);
}

// triangle of bivalent vertices: an inner and an outer hole of three sides each
MarkedMetricGraph triangle() {
  auto g = marked_all_holes(RibbonGraph::from_cycles(6, {{1, 2}, {3, 4}, {5, 6}}, {{2, 3}, {4, 5}, {6, 1}}));
  for (auto& l : g.length) l = Rational(1, 3);
  return g;
}

// kernel of the perimeter functional of one hole
RMatrix hole_slice(const MarkedMetricGraph& g, const std::string& p, const CellForm& f) {
  RMatrix M(1, f.dim());
  for (int i = 0; i < f.dim(); ++i) M(0, i) = 0;
  auto h = g.graph.holes();
  for (int s : h.cycles[h.of[g.marking.at(p).side]]) {
    int e = std::min(s, g.graph.sigma1()[s]);
    for (int i = 0; i < f.dim(); ++i)
      if (f.edges[i] == e) M(0, i) += 1;
  }
  return kernel_basis(M);
}

RMatrix random_antisymmetric(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  RMatrix A(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = 0;
    for (int j = i + 1; j < n; ++j) {
      A(i, j) = Rational(d(rng), 1 + (d(rng) + 4) % 3);
      A(j, i) = -A(i, j);
    }
  }
  return A;
}

}  // namespace

TEST_CASE("omega of a three-sided hole") {
  auto g = triangle();
  CHECK(circumference(g, "p1") == 1);
  for (const std::string p : {"p1", "p2"}) {
    auto f = omega_on_cell(g, p);
    REQUIRE(f.dim() == 3);
    for (int u = 0; u < 3; ++u) {
      CHECK(f.A(u, u) == 0);
      for (int v = 0; v < 3; ++v) {
        CHECK(f.A(u, v) == -f.A(v, u));
        if (u != v) CHECK(mag(f.A(u, v)) == 1);
      }
    }
    auto B = hole_slice(g, p, f);
    CHECK(mag(wedge_power_top(f, 1, B)) == 1);
  }
}

TEST_CASE("omega scales with the perimeter") {
  auto g = triangle();
  auto f1 = omega_on_cell(g, "p1");
  for (auto& l : g.length) l = 2;
  auto f2 = omega_on_cell(g, "p1");
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) CHECK(f2.A(u, v) * 36 == f1.A(u, v));
}

TEST_CASE("omega with an edge traversed twice") {
  // dumbbell: two loops joined by a bridge; the outer hole crosses the bridge twice
  auto g = marked_all_holes(RibbonGraph::from_cycles(6, {{1, 2, 3}, {4, 5, 6}}, {{1, 4}, {2, 3}, {5, 6}}));
  std::string outer;
  for (const auto& [l, t] : g.marking)
    if (g.graph.holes().cycles[g.graph.holes().of[t.side]].size() == 4) outer = l;
  REQUIRE(!outer.empty());
  auto f = omega_on_cell(g, outer);
  for (int u = 0; u < f.dim(); ++u) CHECK(f.A(u, u) == 0);
  // on the slice 2 de_0 + de_a + de_b = 0 the form collapses
  CHECK(wedge_power_top(f, 1, hole_slice(g, outer, f)) == 0);
}

TEST_CASE("omega of a two-sided hole vanishes on its slice") {
  auto g = marked_all_holes(RibbonGraph::from_cycles(6, {{1, 2, 3}, {4, 5, 6}}, {{1, 4}, {2, 6}, {3, 5}}));
  auto f = omega_on_cell(g, "p1");
  CHECK(wedge_power_top(f, 1, hole_slice(g, "p1", f)) == 0);
}

TEST_CASE("omega errors") {
  auto g = triangle();
  CHECK(kind_of([&] { omega_on_cell(g, "nope"); }) == ErrorKind::BadMarking);
  auto v = g;
  v.marking["q"] = {MarkKind::Vertex, 0};
  CHECK(kind_of([&] { omega_on_cell(v, "q"); }) == ErrorKind::VertexMark);
}

TEST_CASE("Pfaffian and determinant") {
  RMatrix A(4, 4);
  int vals[4][4] = {{0, 1, 2, 3}, {-1, 0, 4, 5}, {-2, -4, 0, 6}, {-3, -5, -6, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) A(i, j) = vals[i][j];
  // a12 a34 - a13 a24 + a14 a23
  CHECK(pfaffian(A) == 1 * 6 - 2 * 5 + 3 * 4);
  CHECK(determinant(A) == 64);
  CHECK(pfaffian(RMatrix(0, 0)) == 1);
  CHECK(pfaffian(RMatrix(3, 3)) == 0);

  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    auto B = random_antisymmetric(6, rng);
    auto p = pfaffian(B);
    CHECK(p * p == determinant(B));
  }
}

TEST_CASE("kernel basis") {
  RMatrix M(2, 4);
  int vals[2][4] = {{1, 2, 0, 1}, {0, 0, 1, 3}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) M(i, j) = vals[i][j];
  auto K = kernel_basis(M);
  CHECK(K.cols() == 2);
  auto Z = M * K;
  for (int i = 0; i < Z.rows(); ++i)
    for (int j = 0; j < Z.cols(); ++j) CHECK(Z(i, j) == 0);
}

TEST_CASE("wedge power basics") {
  auto g = triangle();
  auto f = omega_on_cell(g, "p1");
  CHECK(wedge_power_top(f, 0, RMatrix(3, 0)) == 1);
  CHECK(kind_of([&] { wedge_power_top(f, 1, RMatrix(3, 3)); }) == ErrorKind::OddDimension);
}

TEST_CASE("wedge power is invariant under unimodular change of basis") {
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> d(-3, 3);
  auto g = with_unit_lengths(enumerate(1, {"p1", "p2"}, Profile::parse("4"))[0].graph);
  auto f = big_omega(g);
  RMatrix B(f.dim(), 4);
  for (int i = 0; i < f.dim(); ++i)
    for (int j = 0; j < 4; ++j) B(i, j) = d(rng);
  auto base = mag(wedge_power_top(f, 2, B));
  for (int t = 0; t < 10; ++t) {
    RMatrix U(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) U(i, j) = i == j ? 1 : 0;
    // product of elementary integer column operations
    for (int s = 0; s < 6; ++s) {
      int i = s % 4, j = (s + 1 + t) % 4;
      if (i == j) continue;
      RMatrix E(4, 4);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) E(a, b) = a == b ? 1 : 0;
      E(i, j) = d(rng);
      U = U * E;
    }
    CHECK(determinant(U) == 1);
    CHECK(mag(wedge_power_top(f, 2, B * U)) == base);
  }
}

TEST_CASE("disk fiber integrals") {
  for (int r = 0; r <= 3; ++r)
    for (const Rational& eps : {Rational(1, 3), Rational(1), Rational(7, 2)})
      CHECK(fiber_integral_disk(r, eps) == fact(r + 1) / fact(2 * r + 2));
  CHECK(fiber_integral_disk(1, 1) == Rational(1, 12));
  CHECK(fiber_integral_disk(0, 1) == Rational(1, 2));
  CHECK(fiber_integral_disk(2, 1) == Rational(1, 120));
  CHECK(kind_of([] { fiber_integral_disk(-1, 1); }) == ErrorKind::NegativeCount);
  CHECK(kind_of([] { fiber_integral_disk(1, 0); }) == ErrorKind::BadMetric);
}

TEST_CASE("cylinder fiber integrals") {
  auto c11 = fiber_integral_cyl(1, 1, 1);
  CHECK(c11.integral == Rational(1, 12));
  CHECK(c11.simplices == 1);
  CHECK(fiber_integral_cyl(2, 2, 1).integral == 0);
  auto c13 = fiber_integral_cyl(1, 3, Rational(2, 5));
  CHECK(c13.integral == Rational(1, 40));
  CHECK(c13.simplices == 3);
  for (int v1 = 1; v1 <= 7; ++v1)
    for (int v2 = 1; v1 + v2 <= 8; ++v2) {
      if ((v1 + v2) % 2) continue;
      auto c = fiber_integral_cyl(v1, v2, 1);
      int r = (v1 + v2) / 2;
      CHECK(c.simplices == v1 * v2);
      CHECK((c.integral == 0) == (v1 % 2 == 0));
      if (v1 % 2) CHECK(c.integral == Rational(v1 * v2) * fact(r + 1) / fact(2 * r + 2));
    }
  CHECK(kind_of([] { fiber_integral_cyl(1, 2, 1); }) == ErrorKind::ParityMismatch);
  CHECK(kind_of([] { fiber_integral_cyl(0, 2, 1); }) == ErrorKind::NegativeCount);
}

TEST_CASE("nondegeneracy") {
  auto torus = marked_all_holes(RibbonGraph::from_cycles(6, {{1, 2, 3}, {4, 5, 6}}, {{1, 4}, {2, 5}, {3, 6}}));
  auto n = nondegeneracy_check(torus);
  CHECK(n.nondegenerate);
  CHECK(n.slice_dim == 2);
  CHECK(n.pfaffian != 0);

  for (const auto& c : enumerate(0, {"p1", "p2", "p3"}, Profile::parse("2"))) {
    auto r = nondegeneracy_check(with_unit_lengths(c.graph));
    CHECK(r.slice_dim == 0);
    CHECK(r.pfaffian == 1);
    CHECK(r.nondegenerate);
  }

  auto eight = marked_all_holes(RibbonGraph::from_cycles(4, {{1, 2, 3, 4}}, {{1, 2}, {3, 4}}));
  CHECK(kind_of([&] { nondegeneracy_check(eight); }) == ErrorKind::NotTopCell);
}
