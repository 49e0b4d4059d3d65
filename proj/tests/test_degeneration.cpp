#include "test_util.hpp"

#include "ribbon/degeneration.hpp"
#include "ribbon/enumerate.hpp"

#include <algorithm>
#include <set>

using namespace ribbon;

namespace {

MarkedGraph marked_all_holes(const RibbonGraph& g) {
  MarkedGraph mg{g, {}};
  auto h = g.holes();
  for (int i = 0; i < h.size(); ++i) mg.marking["p" + std::to_string(i + 1)] = {MarkKind::Hole, h.cycles[i][0]};
  return mg;
}

const RibbonGraph torus = RibbonGraph::from_cycles(6, {{1, 2, 3}, {4, 5, 6}}, {{1, 4}, {2, 5}, {3, 6}});
const RibbonGraph theta = RibbonGraph::from_cycles(6, {{1, 2, 3}, {4, 5, 6}}, {{1, 4}, {2, 6}, {3, 5}});
const RibbonGraph dumbbell = RibbonGraph::from_cycles(6, {{1, 2, 3}, {4, 5, 6}}, {{1, 4}, {2, 3}, {5, 6}});
const RibbonGraph eight = RibbonGraph::from_cycles(4, {{1, 2, 3, 4}}, {{1, 2}, {3, 4}});

// planar tetrahedron: every hole a triangle
MarkedGraph tetrahedron() {
  for (const auto& c : enumerate(0, default_labels(4), Profile::parse("4"))) {
    auto h = c.graph.graph.holes();
    if (std::all_of(h.cycles.begin(), h.cycles.end(), [](const auto& x) { return x.size() == 3; })) return c.graph;
  }
  FAIL("no tetrahedron");
  return {};
}

std::string label_of_size(const MarkedGraph& g, size_t n) {
  auto h = g.graph.holes();
  for (const auto& [l, t] : g.marking)
    if (t.kind == MarkKind::Hole && h.cycles[h.of[t.side]].size() == n) return l;
  return "";
}

MarkedMetricGraph shrunk_metric(const MarkedGraph& g, const std::string& q) {
  auto m = with_unit_lengths(g);
  return scale_hole(m, q, Rational(1, 100));
}

}  // namespace

TEST_CASE("y strata") {
  CHECK(y_stratum(marked_all_holes(torus), "p1") == 3);
  for (const std::string p : {"p1", "p2", "p3"}) CHECK(y_stratum(marked_all_holes(theta), p) == 2);
  auto circle = marked_all_holes(RibbonGraph::from_cycles(2, {{1, 2}}, {{1, 2}}));
  CHECK(y_stratum(circle, "p1") == 1);
  CHECK(y_stratum(circle, "p2") == 1);
}

TEST_CASE("hole topology") {
  auto tet = tetrahedron();
  for (const std::string p : {"p1", "p2", "p3", "p4"}) {
    auto t = hole_topology(tet, p);
    CHECK(t.kind == HoleTopology::Kind::Disk);
    CHECK(t.valencies == std::vector<int>{3});
    CHECK(t.edges == 3);
  }
  auto db = marked_all_holes(dumbbell);
  auto outer = hole_topology(db, label_of_size(db, 4));
  CHECK(outer.kind == HoleTopology::Kind::Cylinder);
  CHECK(outer.genus == 0);
  CHECK(outer.edges == 3);
  auto closed = hole_topology(marked_all_holes(torus), "p1");
  CHECK(closed.kind == HoleTopology::Kind::ClosedComplement);
  CHECK(closed.genus == 1);
}

TEST_CASE("shrinking a disk hole") {
  auto tet = tetrahedron();
  auto r = shrink(shrunk_metric(tet, "p1"), "p1");
  CHECK(r.topology.kind == HoleTopology::Kind::Disk);
  REQUIRE(r.components.size() == 1);
  CHECK(r.nodes == std::map<std::string, int>{{"p1", 3}});
  CHECK(r.components[0].marking.at("p1").kind == MarkKind::Vertex);
  CHECK(r.components[0].graph.num_edges() == 3);
  CHECK(r.reduced.vertices.size() == 1);
  CHECK(r.reduced.edges.empty());
}

TEST_CASE("shrinking a cylinder hole") {
  int found = 0;
  // in genus 0 with four holes every cylinder swallows a loop's hole; genus 1 has room
  for (const auto& fam : enumerate_all_cells(1, {"p1", "p2"})) {
    for (const auto& c : fam.cells)
    for (const std::string p : {"p1", "p2"}) {
      if (hole_topology(c.graph, p).kind != HoleTopology::Kind::Cylinder) continue;
      ShrinkResult r;
      try {
        r = shrink(shrunk_metric(c.graph, p), p);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConeViolation);
        continue;
      }
      ++found;
      CHECK(r.nodes.size() == 2);
      const auto& w = r.dual.vertices.back();
      CHECK_FALSE(w.positive);
      CHECK(w.genus == 0);
      int degree = 0;
      const int wi = static_cast<int>(r.dual.vertices.size()) - 1;
      for (auto [a, b] : r.dual.edges) degree += (a == wi) + (b == wi);
      CHECK(degree == 2);
      CHECK(r.dual.total_genus() == 1);
    }
  }
  CHECK(found > 0);
}

TEST_CASE("shrink needs the smallest perimeter") {
  auto tet = tetrahedron();
  auto m = with_unit_lengths(tet);
  CHECK(kind_of([&] { shrink(m, "p1"); }) == ErrorKind::ConeViolation);
  CHECK(kind_of([&] { shrink(with_unit_lengths(marked_all_holes(torus)), "p1"); }) == ErrorKind::ConeViolation);
}

TEST_CASE("forgetting a vertex marking") {
  // trivalent: nothing but the label changes
  MarkedGraph t = marked_all_holes(torus);
  t.marking["q"] = {MarkKind::Vertex, 0};
  auto f = forget_vertex_marking(with_unit_lengths(t), "q");
  CHECK(f.graph == torus);
  CHECK(f.marking.count("q") == 0);

  // bivalent vertex between edges of lengths 1/2 and 1/3
  auto tri = RibbonGraph::from_cycles(6, {{1, 2}, {3, 4}, {5, 6}}, {{2, 3}, {4, 5}, {6, 1}});
  MarkedGraph mt = marked_all_holes(tri);
  mt.marking["q"] = {MarkKind::Vertex, 0};
  auto m = with_unit_lengths(mt);
  m.length[0] = m.length[5] = Rational(1, 2);  // edge (6 1)
  m.length[1] = m.length[2] = Rational(1, 3);  // edge (2 3)
  auto merged = forget_vertex_marking(m, "q");
  CHECK(merged.graph.sides() == 4);
  CHECK(merged.marking.count("q") == 0);
  bool has = false;
  for (const auto& l : merged.length) has = has || l == Rational(5, 6);
  CHECK(has);
  CHECK(total_length(merged) == Rational(11, 6));

  // pendant edge ending at a marked univalent vertex
  auto pend = RibbonGraph::from_cycles(4, {{1, 2, 3}}, {{1, 4}, {2, 3}});
  MarkedGraph mp = marked_all_holes(pend);
  mp.marking["q"] = {MarkKind::Vertex, 3};
  CHECK(kind_of([&] { forget_vertex_marking(with_unit_lengths(mp), "q"); }) == ErrorKind::UnivalentVertex);
  CHECK(kind_of([&] { forget_vertex_marking(with_unit_lengths(mp), "p1"); }) == ErrorKind::HoleMark);
}

TEST_CASE("cluster detection") {
  // sharing an edge
  auto th = marked_all_holes(theta);
  auto rep = detect_clusters(th, {"p1", "p2"});
  REQUIRE(rep.partition.size() == 1);
  CHECK(rep.clusters[0].shares_edge.at({"p1", "p2"}));

  // the two inner holes of a figure eight meet only at the vertex
  auto e8 = marked_all_holes(eight);
  std::vector<std::string> inner;
  for (const auto& [l, t] : e8.marking)
    if (e8.graph.holes().cycles[e8.graph.holes().of[t.side]].size() == 1) inner.push_back(l);
  REQUIRE(inner.size() == 2);
  auto rv = detect_clusters(e8, inner);
  REQUIRE(rv.partition.size() == 1);
  CHECK_FALSE(rv.clusters[0].shares_edge.at({inner[0], inner[1]}));

  // no common vertex anywhere gives the discrete partition
  int discrete = 0;
  for (const auto& c : enumerate(0, default_labels(4), Profile::parse("4"))) {
    auto r = detect_clusters(c.graph, {"p1", "p2"});
    auto h = c.graph.graph.holes();
    auto v = c.graph.graph.vertices();
    std::set<int> a, b;
    for (int s : h.cycles[h.of[c.graph.marking.at("p1").side]]) a.insert(v.of[s]);
    for (int s : h.cycles[h.of[c.graph.marking.at("p2").side]]) b.insert(v.of[s]);
    bool meet = std::any_of(a.begin(), a.end(), [&](int x) { return b.count(x) > 0; });
    CHECK(r.partition.size() == (meet ? 1u : 2u));
    discrete += !meet;
  }
  CHECK(discrete > 0);
}

TEST_CASE("dual graph reduction") {
  // two positive vertices over a triangle of nonpositive ones
  DualGraph g;
  g.vertices = {{0, {"p1"}, true}, {0, {"p2"}, true}, {1, {"q1"}, false}, {2, {}, false}, {0, {"q2"}, false}};
  g.edges = {{0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 2}};
  auto r = reduce_dual_graph(g);
  REQUIRE(r.vertices.size() == 3);
  CHECK(r.vertices[2].genus == 1 + 2 + 0 + 1);
  CHECK_FALSE(r.vertices[2].positive);
  CHECK(r.vertices[2].labels == std::vector<std::string>{"q1", "q2"});
  CHECK(r.edges.size() == 2);
  CHECK(r.reduced());
  CHECK(r.total_genus() == g.total_genus());

  CHECK(reduce_dual_graph(r).str() == r.str());

  DualGraph loop;
  loop.vertices = {{0, {"p1"}, true}, {1, {}, false}};
  loop.edges = {{0, 1}, {1, 1}};
  auto l = reduce_dual_graph(loop);
  CHECK(l.vertices[1].genus == 2);
  CHECK(l.edges.size() == 1);

  DualGraph bad;
  bad.vertices = {{0, {"p1"}, true}, {0, {"p1"}, true}};
  CHECK(kind_of([&] { reduce_dual_graph(bad); }) == ErrorKind::InconsistentLabels);
}
