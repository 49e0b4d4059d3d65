#include "test_util.hpp"

#include "ribbon/enumerate.hpp"
#include "ribbon/stable.hpp"
#include "ribbon/subgraph.hpp"

#include <algorithm>
#include <random>
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
const RibbonGraph eight = RibbonGraph::from_cycles(4, {{1, 2, 3, 4}}, {{1, 2}, {3, 4}});

// genus 1, two holes: a loop at A, bridge A-B, B joined to C and D, two edges C-D
const RibbonGraph g12 = RibbonGraph::from_cycles(12, {{1, 2, 3}, {4, 5, 6}, {7, 9, 11}, {8, 10, 12}},
                                                 {{1, 2}, {3, 4}, {5, 7}, {6, 8}, {9, 10}, {11, 12}});
// the theta-like core on B, C, D (sides 5, 6, 9, 11)
const std::vector<int> core{4, 5, 8, 10};

}  // namespace

TEST_CASE("subgraph") {
  auto all = subgraph(torus, {0, 1, 2});
  CHECK(all.graph == torus);
  CHECK(all.exceptional.empty());

  // one edge between distinct vertices is a segment with a single new hole
  auto seg = subgraph(torus, {0});
  CHECK(seg.graph.sides() == 2);
  CHECK(seg.graph.num_holes() == 1);
  CHECK(seg.exceptional.size() == 1);

  // a loop of the figure eight keeps its inner hole and gains one
  auto loop = subgraph(eight, {0});
  CHECK(loop.graph.num_holes() == 2);
  CHECK(loop.exceptional.size() == 1);
}

TEST_CASE("quotient") {
  auto id = quotient(torus, {});
  CHECK(id.graph == torus);
  CHECK(id.exceptional.empty());

  for (int s : {0, 1, 2}) {
    auto q = quotient(theta, {s});
    auto c = contract_edge(theta, s);
    CHECK(canonical_form(q.graph) == canonical_form(c));
  }

  // a nonseparating cycle on two edges: each side of it pinches to a new vertex
  auto q = quotient(torus, {0, 1});
  CHECK(q.exceptional.size() == 2);
  CHECK(q.graph.num_edges() == 1);
}

TEST_CASE("exceptional correspondence") {
  std::mt19937 rng(23);
  int checked = 0;
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 4}, {1, 2}, {0, 5}}) {
    auto cells = enumerate(g, default_labels(n), Profile::parse(std::to_string(4 * g - 4 + 2 * n)));
    for (int t = 0; t < 20; ++t) {
      const auto& G = cells[rng() % cells.size()].graph.graph;
      auto E = mask_edges(G, std::vector<char>(G.sides(), 1));
      std::vector<int> Z;
      for (int e : E)
        if (rng() % 2) Z.push_back(e);
      if (Z.empty() || Z.size() == E.size()) continue;
      auto c = exceptional_correspondence(G, Z);
      CHECK(c.sub.exceptional.size() == c.quo.exceptional.size());
      CHECK(c.pairs.size() == c.sub.exceptional.size());
      std::set<int> hs, vs;
      for (auto [h, v] : c.pairs) {
        hs.insert(h);
        vs.insert(v);
      }
      CHECK(hs.size() == c.pairs.size());
      CHECK(vs.size() == c.pairs.size());
      ++checked;
    }
  }
  CHECK(checked >= 40);

  // theta minus one edge: one new hole, one new vertex
  auto c = exceptional_correspondence(theta, {0, 1});
  CHECK(c.pairs.size() == 1);
}

TEST_CASE("subset classes") {
  auto t = marked_all_holes(torus);
  CHECK(classify_subset(t, {0}).kind == SubsetClass::Kind::Contractible);
  CHECK(classify_subset(t, {0, 1}).kind == SubsetClass::Kind::Semistable);
  auto g = marked_all_holes(g12);
  auto st = classify_subset(g, core);
  CHECK(st.kind == SubsetClass::Kind::StableBearing);
  CHECK(st.zst == core);

  // the bridge from B back to A is a tail
  std::vector<int> with_tail = core;
  with_tail.push_back(2);
  std::sort(with_tail.begin(), with_tail.end());
  CHECK(prune_tails(g, with_tail) == core);
  CHECK(classify_subset(g, with_tail).zst == core);
  CHECK(kind_of([&] { classify_subset(g, {0, 8}); }) == ErrorKind::DisconnectedSubset);
}

TEST_CASE("no degeneration") {
  auto m = with_unit_lengths(marked_all_holes(theta));
  auto s = build_stable(m, {});
  REQUIRE(s.components.size() == 1);
  CHECK(s.components[0].order == 0);
  CHECK(s.components[0].graph.graph == theta);
  CHECK(s.iota.empty());
  // a leading Z_0 equal to every edge is the same thing
  auto s0 = build_stable(m, {{0, 1, 2}});
  CHECK(s0.components.size() == 1);
}

TEST_CASE("one degeneration step") {
  auto m = with_unit_lengths(marked_all_holes(g12));
  CHECK(m.graph.genus() == 1);
  auto s = build_stable(m, {core});
  REQUIRE(s.components.size() == 2);
  auto ord = s.orders();
  std::sort(ord.begin(), ord.end());
  CHECK(ord == std::vector<int>{0, 1});
  REQUIRE(s.iota.size() == 1);
  auto [a, b] = s.iota[0];
  CHECK(is_exceptional_label(a));
  CHECK(is_exceptional_label(b));
  auto ka = s.locate(a).second, kb = s.locate(b).second;
  CHECK(ka != kb);
  // the hole lives in the higher-order component
  const auto& hole = ka == MarkKind::Hole ? a : b;
  CHECK(s.components[s.locate(hole).first].order == 1);
  CHECK(admissible_order(s, s.orders()));
  CHECK(count_admissible_orders(s) == 1);
  Rational sum = 0;
  for (const auto& [l, v] : s.lambda_hat) sum += v;
  CHECK(sum == 1);
  CHECK(stable_to_json(s)["components"].size() == 2);
}

TEST_CASE("admissibility rejects bad orders") {
  auto s = build_stable(with_unit_lengths(marked_all_holes(g12)), {core});
  auto flipped = s.orders();
  for (auto& o : flipped) o = 1 - o;
  CHECK_FALSE(admissible_order(s, flipped));
  CHECK_FALSE(admissible_order(s, {0, 0}));
  auto swapped = s;
  swapped.iota.clear();
  CHECK_FALSE(admissibility_failure(swapped, s.orders()).empty());
}

TEST_CASE("permissibility") {
  auto m = with_unit_lengths(marked_all_holes(g12));
  CHECK(kind_of([&] { build_stable(m, {core, core}); }) == ErrorKind::NotPermissible);
  CHECK(kind_of([&] { build_stable(m, {core, {0}}); }) == ErrorKind::NotPermissible);
  CHECK(kind_of([&] { build_stable(m, {{}}); }) == ErrorKind::NotPermissible);
  CHECK(kind_of([&] { build_stable(m, {{99}}); }) == ErrorKind::NoSuchEdge);
}

TEST_CASE("projected perimeters") {
  auto m = with_unit_lengths(marked_all_holes(g12));
  auto p = projected_perimeters(m, core);
  Rational sum = 0;
  for (const auto& [l, v] : p) sum += v;
  CHECK(sum == 1);
  CHECK(p.size() == 2);
}
