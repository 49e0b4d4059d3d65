#include "test_util.hpp"

#include "ribbon/graph.hpp"
#include "ribbon/graph_json.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace ribbon;

namespace {

RibbonGraph circle() { return RibbonGraph::from_cycles(2, {{1, 2}}, {{1, 2}}); }
RibbonGraph theta_torus() { return RibbonGraph::from_cycles(6, {{1, 2, 3}, {4, 5, 6}}, {{1, 4}, {2, 5}, {3, 6}}); }
RibbonGraph theta_sphere() { return RibbonGraph::from_cycles(6, {{1, 2, 3}, {4, 5, 6}}, {{1, 4}, {2, 6}, {3, 5}}); }

}  // namespace

TEST_CASE("circle graph") {
  auto g = circle();
  CHECK(g.num_vertices() == 1);
  CHECK(g.num_edges() == 1);
  CHECK(g.num_holes() == 2);
  CHECK(g.genus() == 0);
}

TEST_CASE("two trivalent vertices") {
  auto t = theta_torus();
  CHECK(t.num_vertices() == 2);
  CHECK(t.num_edges() == 3);
  CHECK(t.num_holes() == 1);
  CHECK(t.genus() == 1);
  CHECK(t.holes().cycles[0].size() == 6);

  auto s = theta_sphere();
  CHECK(s.genus() == 0);
  CHECK(s.num_holes() == 3);
  for (const auto& h : s.holes().cycles) CHECK(h.size() == 2);
}

TEST_CASE("sigma_inf closes the triangle") {
  auto t = theta_torus();
  Perm id(t.sides());
  std::iota(id.begin(), id.end(), 0);
  CHECK(compose(t.sigma_inf(), compose(t.sigma1(), t.sigma0())) == id);
}

TEST_CASE("validation errors") {
  CHECK(kind_of([] { RibbonGraph(Perm{1, 0}, Perm{0, 1}); }) == ErrorKind::FixedPointInvolution);
  CHECK(kind_of([] { RibbonGraph(Perm{1, 0, 2, 3}, Perm{1, 0}); }) == ErrorKind::DomainMismatch);
  CHECK(kind_of([] { RibbonGraph(Perm{0, 0}, Perm{1, 0}); }) == ErrorKind::DomainMismatch);
}

TEST_CASE("dual") {
  auto d = dual(circle());
  CHECK(d.num_vertices() == 2);
  CHECK(d.num_edges() == 1);
  CHECK(d.num_holes() == 1);

  auto t = theta_torus();
  CHECK(dual(dual(t)) == t);
  CHECK(dual(t).num_holes() == t.num_vertices());
  CHECK(dual(t).num_vertices() == t.num_holes());
  CHECK(dual(t).genus() == t.genus());
}

TEST_CASE("contract_edge") {
  for (int s = 0; s < 6; ++s) {
    auto c = contract_edge(theta_torus(), s);
    CHECK(c.num_vertices() == 1);
    CHECK(c.vertices().cycles[0].size() == 4);
    CHECK(c.num_edges() == 2);
    CHECK(c.num_holes() == 1);
    CHECK(c.genus() == 1);
  }
  auto c = contract_edge(theta_sphere(), 0);
  CHECK(c.num_vertices() == 1);
  CHECK(c.num_edges() == 2);
  CHECK(c.num_holes() == 3);
  CHECK(c.genus() == 0);

  CHECK(kind_of([] { contract_edge(circle(), 0); }) == ErrorKind::LoopContraction);
}

namespace {

// sides permutations commuting with sigma0 and sigma1 that fix every marked orbit
int brute_aut(const RibbonGraph& g, const Marking& m) {
  std::vector<int> p(g.sides());
  std::iota(p.begin(), p.end(), 0);
  auto ho = g.holes();
  int count = 0;
  do {
    bool ok = true;
    for (int x = 0; x < g.sides() && ok; ++x)
      ok = p[g.sigma0()[x]] == g.sigma0()[p[x]] && p[g.sigma1()[x]] == g.sigma1()[p[x]];
    for (const auto& [l, t] : m)
      if (ok) ok = ho.of[p[t.side]] == ho.of[t.side];
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

}  // namespace

TEST_CASE("automorphisms") {
  Marking m{{"p1", {MarkKind::Hole, 0}}};
  CHECK(canonical_form(theta_torus(), m).aut == 6);
  CHECK(brute_aut(theta_torus(), m) == 6);

  // the only nontrivial symmetry of the circle reverses it and swaps its holes
  auto c = circle();
  auto h = c.holes();
  Marking two{{"p1", {MarkKind::Hole, h.cycles[0][0]}}, {"p2", {MarkKind::Hole, h.cycles[1][0]}}};
  CHECK(canonical_form(c).aut == 2);
  CHECK(canonical_form(c, two).aut == brute_aut(c, two));
  CHECK(canonical_form(c, two).aut == 1);

  auto s = theta_sphere();
  auto sh = s.holes();
  Marking three;
  for (int i = 0; i < 3; ++i) three["p" + std::to_string(i + 1)] = {MarkKind::Hole, sh.cycles[i][0]};
  CHECK(canonical_form(s).aut == brute_aut(s, {}));
  CHECK(canonical_form(s, three).aut == brute_aut(s, three));
  auto e8 = RibbonGraph::from_cycles(4, {{1, 2, 3, 4}}, {{1, 2}, {3, 4}});
  CHECK(canonical_form(e8).aut == brute_aut(e8, {}));
}

TEST_CASE("canonical form is invariant under relabeling") {
  std::mt19937 rng(7);
  auto t = theta_sphere();
  auto h = t.holes();
  Marking m;
  for (int i = 0; i < h.size(); ++i) m["p" + std::to_string(i + 1)] = {MarkKind::Hole, h.cycles[i][0]};
  auto base = canonical_form(t, m);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> perm(t.sides());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto r = relabel(MarkedGraph{t, m}, perm);
    CHECK(canonical_form(r.graph, r.marking) == base);
    CHECK(canonical_form(r.graph, r.marking).aut == base.aut);
  }
}

TEST_CASE("marking checks") {
  auto t = theta_sphere();
  Marking dup{{"p1", {MarkKind::Hole, 0}}, {"p2", {MarkKind::Hole, 0}}};
  CHECK(kind_of([&] { check_marking(t, dup); }) == ErrorKind::BadMarking);
  Marking one{{"p1", {MarkKind::Hole, 0}}};
  CHECK(kind_of([&] { check_marking(t, one); }) == ErrorKind::BadMarking);
  CHECK_NOTHROW(check_marking(t, one, false));
}

TEST_CASE("circumference counts doubled sides twice") {
  MarkedGraph mg{theta_torus(), {{"p1", {MarkKind::Hole, 0}}}};
  auto g = with_unit_lengths(mg);
  g.length[0] = g.length[3] = Rational(1, 2);
  CHECK(circumference(g, "p1") == Rational(5));
  CHECK(total_length(g) == Rational(5, 2));
}

TEST_CASE("json round trip") {
  MarkedGraph mg{theta_torus(), {{"p1", {MarkKind::Hole, 0}}}};
  auto g = with_unit_lengths(mg);
  g.length[1] = g.length[4] = Rational(3, 7);
  auto back = graph_from_json(graph_to_json(g));
  CHECK(back.graph == g.graph);
  CHECK(back.length == g.length);
  CHECK(back.marking.count("p1") == 1);
}
