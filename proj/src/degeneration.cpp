#include "ribbon/degeneration.hpp"

#include "ribbon/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace ribbon {

int DualGraph::total_genus() const {
  const int n = static_cast<int>(vertices.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : edges) parent[find(a)] = find(b);
  int comps = 0, g = 0;
  for (int i = 0; i < n; ++i) {
    comps += find(i) == i;
    g += vertices[i].genus;
  }
  return g + static_cast<int>(edges.size()) - n + comps;
}

bool DualGraph::reduced() const {
  for (auto [a, b] : edges)
    if (!vertices[a].positive && !vertices[b].positive) return false;
  return true;
}

std::string DualGraph::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < vertices.size(); ++i) {
    const auto& v = vertices[i];
    if (i) os << ' ';
    os << (v.positive ? '+' : '0') << 'g' << v.genus << '{';
    for (size_t j = 0; j < v.labels.size(); ++j) os << (j ? "," : "") << v.labels[j];
    os << '}';
  }
  os << " |";
  for (auto [a, b] : edges) os << ' ' << a << '-' << b;
  return os.str();
}

namespace {

void validate(const DualGraph& gamma) {
  std::set<std::string> seen;
  for (const auto& v : gamma.vertices) {
    if (v.genus < 0) fail(ErrorKind::InconsistentLabels, "negative vertex genus");
    for (const auto& l : v.labels)
      if (!seen.insert(l).second) fail(ErrorKind::InconsistentLabels, "label " + l + " repeated");
  }
  const int n = static_cast<int>(gamma.vertices.size());
  for (auto [a, b] : gamma.edges)
    if (a < 0 || b < 0 || a >= n || b >= n) fail(ErrorKind::InconsistentLabels, "edge endpoint out of range");
}

}  // namespace

DualGraph reduce_dual_graph(const DualGraph& gamma) {
  validate(gamma);
  DualGraph g = gamma;
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < g.edges.size(); ++i) {
      auto [a, b] = g.edges[i];
      if (g.vertices[a].positive || g.vertices[b].positive) continue;
      g.edges.erase(g.edges.begin() + i);
      changed = true;
      if (a == b) {
        ++g.vertices[a].genus;
        break;
      }
      if (a > b) std::swap(a, b);
      auto& va = g.vertices[a];
      va.genus += g.vertices[b].genus;
      va.labels.insert(va.labels.end(), g.vertices[b].labels.begin(), g.vertices[b].labels.end());
      std::sort(va.labels.begin(), va.labels.end());
      g.vertices.erase(g.vertices.begin() + b);
      for (auto& [x, y] : g.edges) {
        if (x == b) x = a; else if (x > b) --x;
        if (y == b) y = a; else if (y > b) --y;
      }
      break;
    }
  }
  return g;
}

const char* kind_name(HoleTopology::Kind k) {
  switch (k) {
    case HoleTopology::Kind::Disk: return "disk";
    case HoleTopology::Kind::Cylinder: return "cylinder";
    case HoleTopology::Kind::Surface: return "surface";
    case HoleTopology::Kind::ClosedComplement: return "closed";
  }
  return "?";
}

std::string HoleTopology::str() const {
  std::ostringstream os;
  os << kind_name(kind) << "(h=" << genus << ";v=";
  for (size_t i = 0; i < valencies.size(); ++i) os << (i ? "," : "") << valencies[i];
  os << ";edges=" << edges << ')';
  return os.str();
}

namespace {

int hole_of_label(const RibbonGraph& g, const Marking& m, const std::string& q) {
  auto it = m.find(q);
  if (it == m.end()) fail(ErrorKind::BadMarking, "no marking " + q);
  if (it->second.kind != MarkKind::Hole) fail(ErrorKind::VertexMark, q + " marks a vertex");
  return g.holes().of[it->second.side];
}

std::vector<int> sorted_sides(std::vector<int> c) {
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

std::vector<int> hole_edges(const RibbonGraph& g, const Marking& m, const std::string& q) {
  int h = hole_of_label(g, m, q);
  std::set<int> e;
  auto ho = g.holes();
  for (int s : ho.cycles[h]) e.insert(std::min(s, g.sigma1()[s]));
  return {e.begin(), e.end()};
}

int y_stratum(const MarkedGraph& g, const std::string& q) {
  return static_cast<int>(hole_edges(g.graph, g.marking, q).size());
}

HoleTopology topology_of_edges(const RibbonGraph& g, const std::vector<int>& Z,
                               const std::vector<int>& own_holes) {
  auto sub = subgraph(g, Z);
  const auto& sg = sub.graph;
  auto gh = g.holes();
  std::set<std::vector<int>> own;
  for (int h : own_holes) own.insert(sorted_sides(gh.cycles[h]));

  HoleTopology t;
  t.edges = sg.num_edges();
  const int comps = sg.num_components();
  t.genus = (2 * comps - sg.num_vertices() + sg.num_edges() - sg.num_holes()) / 2;

  std::map<int, int> valency_of_hole;
  if (sg.sides() < g.sides()) {
    auto c = exceptional_correspondence(g, Z);
    auto qv = c.quo.graph.vertices();
    for (auto [h, v] : c.pairs) valency_of_hole[h] = static_cast<int>(qv.cycles[v].size());
  }
  auto sh = sg.holes();
  int owned = 0;
  for (int h = 0; h < sh.size(); ++h) {
    std::vector<int> old;
    for (int s : sh.cycles[h]) old.push_back(sub.to_old[s]);
    if (own.count(sorted_sides(old))) {
      ++owned;
      continue;
    }
    auto it = valency_of_hole.find(h);
    t.valencies.push_back(it == valency_of_hole.end() ? 0 : it->second);
  }
  if (owned != static_cast<int>(own_holes.size()))
    fail(ErrorKind::InconsistentLabels, "a hole is not a hole of its own edge subgraph");
  std::sort(t.valencies.begin(), t.valencies.end());
  const int b = static_cast<int>(t.valencies.size());
  if (b == 0) t.kind = HoleTopology::Kind::ClosedComplement;
  else if (b == 1 && t.genus == 0) t.kind = HoleTopology::Kind::Disk;
  else if (b == 2 && t.genus == 0) t.kind = HoleTopology::Kind::Cylinder;
  else t.kind = HoleTopology::Kind::Surface;
  auto gv = g.vertices();
  const bool trivalent = std::all_of(gv.cycles.begin(), gv.cycles.end(),
                                     [](const std::vector<int>& c) { return c.size() == 3; });
  if (t.kind == HoleTopology::Kind::Surface && own_holes.size() == 1 && trivalent) {
    int lhs = 6 * t.genus - 6;
    for (int v : t.valencies) lhs += v + 3;
    t.identity_holds = lhs == t.edges - 3;
  }
  return t;
}

HoleTopology hole_topology(const MarkedGraph& g, const std::string& q) {
  int h = hole_of_label(g.graph, g.marking, q);
  return topology_of_edges(g.graph, hole_edges(g.graph, g.marking, q), {h});
}

ShrinkResult shrink(const MarkedMetricGraph& g, const std::string& q) {
  check_metric(g);
  int qh = hole_of_label(g.graph, g.marking, q);
  Rational lq = circumference(g, q);
  if (lq <= 0) fail(ErrorKind::ZeroPerimeter, "hole " + q + " has zero perimeter");
  for (const auto& [label, t] : g.marking) {
    if (t.kind != MarkKind::Hole || label == q) continue;
    if (!(lq < circumference(g, label)))
      fail(ErrorKind::ConeViolation, "l_" + q + " is not below l_" + label);
  }

  ShrinkResult r;
  auto Z = hole_edges(g.graph, g.marking, q);
  r.topology = topology_of_edges(g.graph, Z, {qh});
  if (r.topology.kind == HoleTopology::Kind::ClosedComplement)
    fail(ErrorKind::ConeViolation, "the edges bordering " + q + " fill the surface");

  auto in = edge_mask(g.graph, Z);
  auto quo = quotient(g.graph, Z);
  auto vo = g.graph.vertices();
  const Perm si = g.graph.sigma_inf();

  // marked labels carried into the quotient, and vertex marks swallowed by the shrunk part
  std::map<std::string, MarkTarget> carried;
  std::vector<std::string> swallowed;
  for (const auto& [label, t] : g.marking) {
    if (label == q) continue;
    if (t.kind == MarkKind::Hole) {
      int x = t.side;
      while (in[x]) {
        x = si[x];
        if (x == t.side) fail(ErrorKind::ConeViolation, "hole " + label + " would vanish");
      }
      carried[label] = {MarkKind::Hole, quo.from_old[x]};
    } else {
      const auto& cyc = vo.cycles[vo.of[t.side]];
      bool touches = std::any_of(cyc.begin(), cyc.end(), [&](int s) { return in[s] != 0; });
      if (touches) swallowed.push_back(label);
      else carried[label] = {MarkKind::Vertex, quo.from_old[t.side]};
    }
  }
  const bool disk_vertex = r.topology.kind == HoleTopology::Kind::Disk && swallowed.empty();
  auto qvo = quo.graph.vertices();
  int k = 0;
  for (int v : quo.exceptional) {
    std::string name = disk_vertex ? q : "~" + std::to_string(++k);
    carried[name] = {MarkKind::Vertex, qvo.cycles[v][0]};
    r.nodes[name] = static_cast<int>(qvo.cycles[v].size());
  }

  auto pieces = split_components(quo.graph);
  std::vector<int> piece_of(quo.graph.sides()), local(quo.graph.sides());
  for (size_t p = 0; p < pieces.size(); ++p)
    for (size_t i = 0; i < pieces[p].to_old.size(); ++i) {
      piece_of[pieces[p].to_old[i]] = static_cast<int>(p);
      local[pieces[p].to_old[i]] = static_cast<int>(i);
    }
  for (const auto& pc : pieces) {
    MarkedMetricGraph c;
    c.graph = pc.graph;
    for (int s : pc.to_old) c.length.push_back(g.length[quo.to_old[s]]);
    r.components.push_back(std::move(c));
  }
  for (const auto& [label, t] : carried)
    r.components[piece_of[t.side]].marking[label] = {t.kind, local[t.side]};

  for (const auto& c : r.components) {
    DualGraph::Vertex v;
    v.genus = c.graph.genus();
    for (const auto& [label, t] : c.marking)
      if (label[0] != '~') v.labels.push_back(label);
    r.dual.vertices.push_back(v);
  }
  if (!disk_vertex) {
    DualGraph::Vertex w;
    w.genus = r.topology.genus;
    w.positive = false;
    w.labels = swallowed;
    w.labels.push_back(q);
    std::sort(w.labels.begin(), w.labels.end());
    const int wi = static_cast<int>(r.dual.vertices.size());
    r.dual.vertices.push_back(w);
    for (const auto& [name, val] : r.nodes)
      r.dual.edges.emplace_back(piece_of[carried.at(name).side], wi);
  }
  r.reduced = reduce_dual_graph(r.dual);
  if (r.dual.total_genus() != g.graph.genus())
    fail(ErrorKind::InconsistentLabels, "shrinking changed the total genus");
  return r;
}

MarkedMetricGraph scale_hole(const MarkedMetricGraph& g, const std::string& q, const Rational& t) {
  auto in = edge_mask(g.graph, hole_edges(g.graph, g.marking, q));
  MarkedMetricGraph out = g;
  for (int s = 0; s < g.graph.sides(); ++s)
    if (in[s]) out.length[s] *= t;
  return out;
}

MarkedMetricGraph forget_vertex_marking(const MarkedMetricGraph& g, const std::string& q) {
  auto it = g.marking.find(q);
  if (it == g.marking.end()) fail(ErrorKind::BadMarking, "no marking " + q);
  if (it->second.kind == MarkKind::Hole) fail(ErrorKind::HoleMark, q + " marks a hole");
  const int side = it->second.side;
  auto vo = g.graph.vertices();
  const int valency = static_cast<int>(vo.cycles[vo.of[side]].size());
  if (valency == 1) fail(ErrorKind::UnivalentVertex, q + " marks a univalent vertex");
  MarkedMetricGraph out = g;
  out.marking.erase(q);
  if (valency >= 3) return out;
  return merge_bivalent_vertex(out, side);
}

ClusterReport detect_clusters(const MarkedGraph& g, const std::vector<std::string>& Q) {
  const auto& G = g.graph;
  auto ho = G.holes();
  auto vo = G.vertices();
  const int n = static_cast<int>(Q.size());
  std::vector<int> hidx(n);
  std::vector<std::set<int>> verts(n);
  for (int i = 0; i < n; ++i) {
    hidx[i] = hole_of_label(G, g.marking, Q[i]);
    for (int s : ho.cycles[hidx[i]]) verts[i].insert(vo.of[s]);
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto adjacent = [&](int i, int j) {
    return std::any_of(verts[i].begin(), verts[i].end(), [&](int v) { return verts[j].count(v) > 0; });
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (adjacent(i, j)) parent[find(i)] = find(j);

  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> blocks;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end(), [&](int a, int b) { return Q[a] < Q[b]; });
    blocks.push_back(members);
  }
  std::sort(blocks.begin(), blocks.end(), [&](const auto& a, const auto& b) { return Q[a[0]] < Q[b[0]]; });

  ClusterReport rep;
  for (const auto& blk : blocks) {
    ClusterInfo info;
    std::set<int> Z;
    std::vector<int> own;
    std::vector<std::string> names;
    for (int i : blk) {
      names.push_back(Q[i]);
      own.push_back(hidx[i]);
      for (int e : hole_edges(G, g.marking, Q[i])) Z.insert(e);
    }
    info.holes = names;
    info.topology = topology_of_edges(G, {Z.begin(), Z.end()}, own);
    for (size_t a = 0; a < blk.size(); ++a)
      for (size_t b = a + 1; b < blk.size(); ++b) {
        int i = blk[a], j = blk[b];
        if (!adjacent(i, j)) continue;
        bool shares = false;
        for (int s : ho.cycles[hidx[i]])
          if (ho.of[G.sigma1()[s]] == hidx[j]) shares = true;
        info.shares_edge[{Q[i], Q[j]}] = shares;
      }
    rep.partition.push_back(names);
    rep.clusters.push_back(std::move(info));
  }
  return rep;
}

}  // namespace ribbon
