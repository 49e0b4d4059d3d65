#include "ribbon/subgraph.hpp"

#include "ribbon/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ribbon {

std::vector<char> edge_mask(const RibbonGraph& g, const std::vector<int>& Z) {
  std::vector<char> m(g.sides(), 0);
  for (int s : Z) {
    if (s < 0 || s >= g.sides()) fail(ErrorKind::NoSuchEdge, "side " + std::to_string(s + 1) + " out of range");
    m[s] = m[g.sigma1()[s]] = 1;
  }
  return m;
}

std::vector<int> mask_edges(const RibbonGraph& g, const std::vector<char>& mask) {
  std::vector<int> out;
  for (int s = 0; s < g.sides(); ++s)
    if (mask[s] && s < g.sigma1()[s]) out.push_back(s);
  return out;
}

namespace {

// side sets of the orbits of p, translated to parent sides
std::set<std::vector<int>> orbit_sets(const Perm& p, const std::vector<int>* to_old) {
  std::set<std::vector<int>> out;
  for (auto c : orbits(p).cycles) {
    if (to_old)
      for (int& x : c) x = (*to_old)[x];
    std::sort(c.begin(), c.end());
    out.insert(c);
  }
  return out;
}

std::vector<int> sorted_old(std::vector<int> cyc, const std::vector<int>& to_old) {
  for (int& x : cyc) x = to_old[x];
  std::sort(cyc.begin(), cyc.end());
  return cyc;
}

}  // namespace

SubgraphResult subgraph(const RibbonGraph& g, const std::vector<int>& Z) {
  if (Z.empty()) fail(ErrorKind::EmptySubset, "subgraph of the empty edge set");
  auto in = edge_mask(g, Z);
  SubgraphResult r;
  r.from_old.assign(g.sides(), -1);
  for (int s = 0; s < g.sides(); ++s)
    if (in[s]) {
      r.from_old[s] = static_cast<int>(r.to_old.size());
      r.to_old.push_back(s);
    }
  const int n = static_cast<int>(r.to_old.size());
  Perm s0(n), s1(n);
  for (int i = 0; i < n; ++i) {
    int x = r.to_old[i];
    int y = g.sigma0()[x];
    while (!in[y]) y = g.sigma0()[y];
    s0[i] = r.from_old[y];
    s1[i] = r.from_old[g.sigma1()[x]];
  }
  r.graph = RibbonGraph(std::move(s0), std::move(s1));
  auto parent = orbit_sets(g.sigma_inf(), nullptr);
  auto ho = r.graph.holes();
  for (int h = 0; h < ho.size(); ++h)
    if (!parent.count(sorted_old(ho.cycles[h], r.to_old))) r.exceptional.push_back(h);
  return r;
}

QuotientResult quotient(const RibbonGraph& g, const std::vector<int>& Z) {
  auto in = edge_mask(g, Z);
  if (std::all_of(in.begin(), in.end(), [](char c) { return c != 0; }))
    fail(ErrorKind::FullSubset, "quotient by the whole edge set");
  QuotientResult r;
  r.from_old.assign(g.sides(), -1);
  for (int s = 0; s < g.sides(); ++s)
    if (!in[s]) {
      r.from_old[s] = static_cast<int>(r.to_old.size());
      r.to_old.push_back(s);
    }
  const int n = static_cast<int>(r.to_old.size());
  const Perm si = g.sigma_inf();
  Perm sinf(n), s1(n);
  for (int i = 0; i < n; ++i) {
    int x = r.to_old[i];
    int y = si[x];
    while (in[y]) y = si[y];
    sinf[i] = r.from_old[y];
    s1[i] = r.from_old[g.sigma1()[x]];
  }
  // sigma0 = sigma1 o sigma_inf^-1
  Perm s0 = compose(s1, inverse(sinf));
  r.graph = RibbonGraph(std::move(s0), std::move(s1));
  auto parent = orbit_sets(g.sigma0(), nullptr);
  auto vo = r.graph.vertices();
  for (int v = 0; v < vo.size(); ++v)
    if (!parent.count(sorted_old(vo.cycles[v], r.to_old))) r.exceptional.push_back(v);
  return r;
}

Correspondence exceptional_correspondence(const RibbonGraph& g, const std::vector<int>& Z) {
  Correspondence c;
  c.sub = subgraph(g, Z);
  c.quo = quotient(g, Z);
  auto in = edge_mask(g, Z);
  const Perm& s0 = g.sigma0();
  const Perm& s1 = g.sigma1();
  const Perm si = g.sigma_inf();

  auto ho = c.sub.graph.holes();
  auto vo = c.quo.graph.vertices();
  std::map<std::vector<int>, int> vertex_by_set, hole_by_set;
  for (int v : c.quo.exceptional) vertex_by_set[sorted_old(vo.cycles[v], c.quo.to_old)] = v;
  for (int h : c.sub.exceptional) hole_by_set[sorted_old(ho.cycles[h], c.sub.to_old)] = h;

  std::map<int, int> h2v, v2h;
  for (int h : c.sub.exceptional) {
    std::set<int> V;
    for (int e_new : ho.cycles[h]) {
      int e = c.sub.to_old[e_new];
      for (int y = s0[e]; !in[y]; y = s0[y]) V.insert(y);
    }
    auto it = vertex_by_set.find(std::vector<int>(V.begin(), V.end()));
    if (it == vertex_by_set.end())
      fail(ErrorKind::InconsistentLabels, "exceptional hole does not map to an exceptional vertex");
    h2v[h] = it->second;
  }
  for (int v : c.quo.exceptional) {
    auto vs = sorted_old(vo.cycles[v], c.quo.to_old);
    std::set<int> V(vs.begin(), vs.end());
    std::set<int> H;
    for (int e : V) {
      for (int y = si[s1[e]]; !V.count(y); y = si[y]) {
        if (!in[y]) break;
        H.insert(y);
      }
    }
    auto it = hole_by_set.find(std::vector<int>(H.begin(), H.end()));
    if (it == hole_by_set.end())
      fail(ErrorKind::InconsistentLabels, "exceptional vertex does not map to an exceptional hole");
    v2h[v] = it->second;
  }
  if (h2v.size() != v2h.size()) fail(ErrorKind::InconsistentLabels, "exceptional point counts differ");
  for (const auto& [h, v] : h2v) {
    if (v2h.at(v) != h) fail(ErrorKind::InconsistentLabels, "exceptional correspondence is not inverse");
    c.pairs.emplace_back(h, v);
  }
  return c;
}

const char* kind_name(SubsetClass::Kind k) {
  switch (k) {
    case SubsetClass::Kind::Contractible: return "contractible";
    case SubsetClass::Kind::Semistable: return "semistable";
    case SubsetClass::Kind::StableBearing: return "stable";
  }
  return "?";
}

namespace {

std::vector<char> marked_vertices(const MarkedGraph& g) {
  auto vo = g.graph.vertices();
  std::vector<char> marked(vo.size(), 0);
  for (const auto& [l, t] : g.marking)
    if (t.kind == MarkKind::Vertex) marked[vo.of[t.side]] = 1;
  return marked;
}

}  // namespace

std::vector<int> prune_tails(const MarkedGraph& g, const std::vector<int>& Z) {
  auto in = edge_mask(g.graph, Z);
  auto vo = g.graph.vertices();
  auto marked = marked_vertices(g);
  const Perm& s1 = g.graph.sigma1();
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> deg(vo.size(), 0);
    for (int s = 0; s < g.graph.sides(); ++s)
      if (in[s]) ++deg[vo.of[s]];
    for (int s = 0; s < g.graph.sides(); ++s) {
      int v = vo.of[s];
      if (in[s] && deg[v] == 1 && !marked[v]) {
        in[s] = in[s1[s]] = 0;
        --deg[v];
        --deg[vo.of[s1[s]]];
        changed = true;
      }
    }
  }
  return mask_edges(g.graph, in);
}

SubsetClass classify_subset(const MarkedGraph& g, const std::vector<int>& Z) {
  if (Z.empty()) fail(ErrorKind::EmptySubset, "empty edge subset");
  auto in = edge_mask(g.graph, Z);
  auto vo = g.graph.vertices();
  const Perm& s1 = g.graph.sigma1();
  // union-find over the vertices touched by Z
  std::vector<int> parent(vo.size());
  for (int i = 0; i < vo.size(); ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::set<int> verts;
  int edges = 0;
  for (int s = 0; s < g.graph.sides(); ++s) {
    if (!in[s]) continue;
    verts.insert(vo.of[s]);
    if (s < s1[s]) {
      ++edges;
      parent[find(vo.of[s])] = find(vo.of[s1[s]]);
    }
  }
  std::set<int> roots;
  for (int v : verts) roots.insert(find(v));
  if (roots.size() != 1) fail(ErrorKind::DisconnectedSubset, "edge subset is not connected");
  auto marked = marked_vertices(g);
  int nmarked = 0;
  for (int v : verts) nmarked += marked[v];
  const int cycles = edges - static_cast<int>(verts.size()) + 1;
  SubsetClass c;
  if (cycles == 0 && nmarked <= 1) {
    c.kind = SubsetClass::Kind::Contractible;
    return c;
  }
  if (cycles == 1 && nmarked == 0) {
    c.kind = SubsetClass::Kind::Semistable;
    return c;
  }
  c.kind = SubsetClass::Kind::StableBearing;
  c.zst = prune_tails(g, Z);
  return c;
}

}  // namespace ribbon

namespace ribbon {

std::vector<Piece> split_components(const RibbonGraph& g) {
  auto comp = g.component_of();
  int nc = g.num_components();
  std::vector<std::vector<int>> members(nc);
  for (int s = 0; s < g.sides(); ++s) members[comp[s]].push_back(s);
  std::vector<Piece> out;
  for (auto& mem : members) {
    std::vector<int> from(g.sides(), -1);
    for (size_t i = 0; i < mem.size(); ++i) from[mem[i]] = static_cast<int>(i);
    Perm s0(mem.size()), s1(mem.size());
    for (size_t i = 0; i < mem.size(); ++i) {
      s0[i] = from[g.sigma0()[mem[i]]];
      s1[i] = from[g.sigma1()[mem[i]]];
    }
    out.push_back({RibbonGraph(std::move(s0), std::move(s1)), mem});
  }
  return out;
}

Marking remap_marking(const RibbonGraph& old_graph, const Marking& m, const std::vector<int>& old_to_new) {
  Marking out;
  const Perm si = old_graph.sigma_inf();
  for (const auto& [label, t] : m) {
    const Perm& p = t.kind == MarkKind::Hole ? si : old_graph.sigma0();
    int x = t.side;
    while (old_to_new[x] < 0) {
      x = p[x];
      if (x == t.side) fail(ErrorKind::BadMarking, "marked " + label + " vanished");
    }
    out[label] = {t.kind, old_to_new[x]};
  }
  return out;
}

MarkedMetricGraph merge_bivalent_vertex(const MarkedMetricGraph& g, int side, std::vector<int>* old_to_new) {
  const Perm& s0 = g.graph.sigma0();
  const Perm& s1 = g.graph.sigma1();
  int s = side, t = s0[side];
  if (s0[t] != s) fail(ErrorKind::BadMarking, "vertex is not bivalent");
  if (s1[s] == t) fail(ErrorKind::BadMarking, "cannot merge a loop at a bivalent vertex");
  int a = s1[s], b = s1[t];
  std::vector<int> map(g.graph.sides(), -1);
  int n = 0;
  for (int x = 0; x < g.graph.sides(); ++x)
    if (x != s && x != t) map[x] = n++;
  if (n == 0) fail(ErrorKind::EmptySides, "merging would leave no edges");
  Perm ns0(n), ns1(n);
  std::vector<Rational> len(n);
  for (int x = 0; x < g.graph.sides(); ++x) {
    if (map[x] < 0) continue;
    ns0[map[x]] = map[s0[x]];
    int y = x == a ? b : x == b ? a : s1[x];
    ns1[map[x]] = map[y];
    len[map[x]] = (x == a || x == b) ? g.length[s] + g.length[t] : g.length[x];
  }
  MarkedMetricGraph out;
  out.graph = RibbonGraph(std::move(ns0), std::move(ns1));
  out.marking = remap_marking(g.graph, g.marking, map);
  out.length = std::move(len);
  if (old_to_new) *old_to_new = map;
  return out;
}

}  // namespace ribbon
