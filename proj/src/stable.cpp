#include "ribbon/stable.hpp"

#include "ribbon/error.hpp"
#include "ribbon/graph_json.hpp"
#include "ribbon/subgraph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace ribbon {

bool is_exceptional_label(const std::string& label) { return !label.empty() && label[0] == '~'; }

std::vector<int> StableGraphData::orders() const {
  std::vector<int> o;
  for (const auto& c : components) o.push_back(c.order);
  return o;
}

std::pair<int, MarkKind> StableGraphData::locate(const std::string& point) const {
  for (size_t i = 0; i < components.size(); ++i) {
    auto it = components[i].graph.marking.find(point);
    if (it != components[i].graph.marking.end()) return {static_cast<int>(i), it->second.kind};
  }
  fail(ErrorKind::InconsistentLabels, "no special point " + point);
}

namespace {

// a stage graph with, per side, the original edges its edge stands for
struct Stage {
  MarkedMetricGraph g;
  std::vector<std::set<int>> chain;
};

struct Builder {
  StableGraphData out;
  int next_label = 0;

  std::string fresh() { return "~" + std::to_string(++next_label); }

  void emit(const MarkedMetricGraph& g, int order) { out.components.push_back({g, order}); }
};

std::vector<int> component_roots(const RibbonGraph& g, const std::vector<char>& in) {
  // union-find over vertices through the edges in the mask; root per side (-1 outside)
  auto vo = g.vertices();
  std::vector<int> parent(vo.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int s = 0; s < g.sides(); ++s)
    if (in[s]) parent[find(vo.of[s])] = find(vo.of[g.sigma1()[s]]);
  std::vector<int> root(g.sides(), -1);
  for (int s = 0; s < g.sides(); ++s)
    if (in[s]) root[s] = find(vo.of[s]);
  return root;
}

// splits g into components, carrying marking, lengths and chains
std::vector<Stage> split(const Stage& st) {
  std::vector<Stage> out;
  for (const auto& pc : split_components(st.g.graph)) {
    std::vector<int> local(st.g.graph.sides(), -1);
    for (size_t i = 0; i < pc.to_old.size(); ++i) local[pc.to_old[i]] = static_cast<int>(i);
    Stage s;
    s.g.graph = pc.graph;
    for (int x : pc.to_old) {
      s.g.length.push_back(st.g.length[x]);
      s.chain.push_back(st.chain[x]);
    }
    for (const auto& [label, t] : st.g.marking)
      if (local[t.side] >= 0) s.g.marking[label] = {t.kind, local[t.side]};
    out.push_back(std::move(s));
  }
  return out;
}

// erase unmarked bivalent vertices, joining chains
void reduce_bivalent(Stage& st) {
  for (bool changed = true; changed;) {
    changed = false;
    auto vo = st.g.graph.vertices();
    std::set<int> marked;
    for (const auto& [l, t] : st.g.marking)
      if (t.kind == MarkKind::Vertex) marked.insert(vo.of[t.side]);
    for (int v = 0; v < vo.size(); ++v) {
      if (vo.cycles[v].size() != 2 || marked.count(v)) continue;
      int s = vo.cycles[v][0], t = vo.cycles[v][1];
      const Perm& s1 = st.g.graph.sigma1();
      if (s1[s] == t) continue;
      std::set<int> joined = st.chain[s];
      joined.insert(st.chain[t].begin(), st.chain[t].end());
      int a = s1[s], b = s1[t];
      std::vector<int> map;
      st.g = merge_bivalent_vertex(st.g, s, &map);
      std::vector<std::set<int>> chain(st.g.graph.sides());
      for (size_t x = 0; x < map.size(); ++x)
        if (map[x] >= 0) chain[map[x]] = st.chain[x];
      chain[map[a]] = chain[map[b]] = joined;
      st.chain = std::move(chain);
      changed = true;
      break;
    }
  }
}

void normalize(MarkedMetricGraph& g, const Rational& total) {
  if (total <= 0) fail(ErrorKind::BadMetric, "component of zero total length");
  for (auto& l : g.length) l /= total;
}

}  // namespace

std::map<std::string, Rational> projected_perimeters(const MarkedMetricGraph& g, const std::vector<int>& Z1) {
  auto in = edge_mask(g.graph, Z1);
  auto ho = g.graph.holes();
  std::map<std::string, Rational> per;
  Rational sum = 0;
  for (const auto& [label, t] : g.marking) {
    if (t.kind != MarkKind::Hole) continue;
    Rational p = 0;
    for (int s : ho.cycles[ho.of[t.side]])
      if (!in[s]) p += g.length[s];
    per[label] = p;
    sum += p;
  }
  if (sum <= 0) fail(ErrorKind::ZeroPerimeter, "all P-perimeters vanish");
  for (auto& [l, p] : per) p /= sum;
  return per;
}

StableGraphData build_stable(const MarkedMetricGraph& g, const std::vector<std::vector<int>>& Zseq_in) {
  check_metric(g);
  check_marking(g.graph, g.marking, true);
  if (!g.graph.connected()) fail(ErrorKind::Disconnected, "input graph is disconnected");
  for (const auto& [label, t] : g.marking)
    if (is_exceptional_label(label)) fail(ErrorKind::BadMarking, "labels starting with ~ are reserved");

  std::vector<std::set<int>> Zseq;
  for (const auto& z : Zseq_in) {
    std::set<int> e;
    for (int s : z) {
      if (s < 0 || s >= g.graph.sides()) fail(ErrorKind::NoSuchEdge, "side " + std::to_string(s + 1) + " out of range");
      e.insert(std::min(s, g.graph.sigma1()[s]));
    }
    Zseq.push_back(std::move(e));
  }
  if (!Zseq.empty() && static_cast<int>(Zseq.front().size()) == g.graph.num_edges()) Zseq.erase(Zseq.begin());

  Builder b;
  for (const auto& [label, t] : g.marking) b.out.P.push_back(label);

  Stage st;
  st.g = g;
  st.chain.resize(g.graph.sides());
  for (int s = 0; s < g.graph.sides(); ++s) st.chain[s] = {std::min(s, g.graph.sigma1()[s])};

  const int k = static_cast<int>(Zseq.size());
  for (int j = 0; j < k; ++j) {
    const auto& Zorig = Zseq[j];
    const auto& H = st.g.graph;
    if (Zorig.empty()) fail(ErrorKind::NotPermissible, "Z_" + std::to_string(j + 1) + " is empty");
    // translate to edges of the current stage
    std::vector<int> Z;
    std::set<int> covered;
    for (int s = 0; s < H.sides(); ++s) {
      if (s > H.sigma1()[s]) continue;
      const auto& c = st.chain[s];
      size_t hit = std::count_if(c.begin(), c.end(), [&](int e) { return Zorig.count(e) > 0; });
      if (hit == 0) continue;
      if (hit != c.size()) fail(ErrorKind::NotPermissible, "Z_" + std::to_string(j + 1) + " splits a merged edge");
      Z.push_back(s);
      covered.insert(c.begin(), c.end());
    }
    if (covered.size() != Zorig.size())
      fail(ErrorKind::NotPermissible, "Z_" + std::to_string(j + 1) + " leaves the previous stable part");
    auto in = edge_mask(H, Z);
    auto comp = H.component_of();
    std::map<int, bool> whole;
    for (int s = 0; s < H.sides(); ++s) whole[comp[s]] = true;
    for (int s = 0; s < H.sides(); ++s)
      if (!in[s]) whole[comp[s]] = false;
    for (const auto& [c, w] : whole)
      if (w) fail(ErrorKind::NotPermissible, "Z_" + std::to_string(j + 1) + " contains a whole component");

    auto corr = exceptional_correspondence(H, Z);
    const auto& sub = corr.sub;
    const auto& quo = corr.quo;
    auto root = component_roots(H, in);
    auto Hv = H.vertices();
    auto Hh = H.holes();
    auto sub_holes = sub.graph.holes();
    auto qv = quo.graph.vertices();

    // group Z into connected pieces
    std::map<int, std::vector<int>> pieces;
    for (int s : Z) pieces[root[s]].push_back(s);

    std::map<int, std::string> vertex_label;  // quotient vertex index -> label
    std::map<int, int> hole_to_vertex;         // subgraph hole -> quotient vertex
    for (auto [h, v] : corr.pairs) hole_to_vertex[h] = v;
    std::vector<Stage> next;

    for (const auto& [r, piece] : pieces) {
      auto cls = classify_subset(MarkedGraph{H, st.g.marking}, piece);
      // exceptional and ordinary subgraph holes of this piece
      std::vector<int> exc, ord;
      for (int h = 0; h < sub_holes.size(); ++h) {
        if (root[sub.to_old[sub_holes.cycles[h][0]]] != r) continue;
        (hole_to_vertex.count(h) ? exc : ord).push_back(h);
      }
      if (cls.kind == SubsetClass::Kind::Contractible) {
        std::string mark;
        std::set<int> vs;
        for (int s : piece) {
          vs.insert(Hv.of[s]);
          vs.insert(Hv.of[H.sigma1()[s]]);
        }
        for (const auto& [l, t] : st.g.marking)
          if (t.kind == MarkKind::Vertex && vs.count(Hv.of[t.side])) mark = l;
        if (!mark.empty())
          for (int h : exc) vertex_label[hole_to_vertex[h]] = mark;
      } else if (cls.kind == SubsetClass::Kind::Semistable) {
        if (exc.size() == 2) {
          std::string a = b.fresh(), c = b.fresh();
          vertex_label[hole_to_vertex[exc[0]]] = a;
          vertex_label[hole_to_vertex[exc[1]]] = c;
          b.out.iota.emplace_back(a, c);
        } else if (exc.size() == 1 && ord.size() == 1) {
          int old_hole = Hh.of[sub.to_old[sub_holes.cycles[ord[0]][0]]];
          auto lab = hole_label(H, st.g.marking, old_hole);
          if (!lab) fail(ErrorKind::InconsistentLabels, "unlabeled hole in a stage graph");
          std::string vtx;
          if (is_exceptional_label(*lab)) {
            // the surrounded exceptional hole passes its partner to the new vertex
            vtx = b.fresh();
            auto& io = b.out.iota;
            std::string partner;
            for (const auto& [x, y] : io) {
              if (x == *lab) partner = y;
              if (y == *lab) partner = x;
            }
            if (partner.empty()) fail(ErrorKind::InconsistentLabels, "exceptional hole " + *lab + " is unpaired");
            io.erase(std::remove_if(io.begin(), io.end(),
                                    [&](const auto& p) { return p.first == *lab || p.second == *lab; }),
                     io.end());
            io.emplace_back(partner, vtx);
          } else {
            vtx = *lab;
          }
          vertex_label[hole_to_vertex[exc[0]]] = vtx;
        } else {
          fail(ErrorKind::InconsistentLabels, "semistable piece with an unexpected hole census");
        }
      } else {
        // the stable core becomes a component of the next stage
        std::map<int, std::string> exc_name;  // subgraph hole -> hole label in the next stage
        for (int h : exc) {
          std::string v = b.fresh();
          vertex_label[hole_to_vertex[h]] = v;
          exc_name[h] = v + ".h";
          b.out.iota.emplace_back(v, v + ".h");
        }
        auto zs = subgraph(H, cls.zst);
        Stage ns;
        ns.g.graph = zs.graph;
        for (int x : zs.to_old) {
          ns.g.length.push_back(st.g.length[x]);
          ns.chain.push_back(st.chain[x]);
        }
        auto zh = zs.graph.holes();
        for (int h = 0; h < zh.size(); ++h) {
          int side_old = zs.to_old[zh.cycles[h][0]];
          int sh = sub_holes.of[sub.from_old[side_old]];
          std::string label;
          if (exc_name.count(sh)) {
            label = exc_name[sh];
          } else {
            auto lab = hole_label(H, st.g.marking, Hh.of[side_old]);
            if (!lab) fail(ErrorKind::InconsistentLabels, "unlabeled hole in a stage graph");
            label = *lab;
          }
          if (ns.g.marking.count(label)) fail(ErrorKind::InconsistentLabels, "hole " + label + " repeated");
          ns.g.marking[label] = {MarkKind::Hole, zh.cycles[h][0]};
        }
        for (const auto& [l, t] : st.g.marking) {
          if (t.kind != MarkKind::Vertex) continue;
          bool touches = false;
          for (int x : Hv.cycles[Hv.of[t.side]]) {
            if (in[x] && root[x] == r) touches = true;
            if (zs.from_old[x] >= 0) {
              ns.g.marking[l] = {MarkKind::Vertex, zs.from_old[x]};
              break;
            }
          }
          if (touches && !ns.g.marking.count(l))
            fail(ErrorKind::InconsistentLabels, "marked vertex " + l + " fell off the stable core");
        }
        reduce_bivalent(ns);
        next.push_back(std::move(ns));
      }
    }

    // order-j components: the quotient, labeled
    Stage q;
    q.g.graph = quo.graph;
    for (int x : quo.to_old) {
      q.g.length.push_back(st.g.length[x]);
      q.chain.push_back(st.chain[x]);
    }
    for (const auto& [l, t] : st.g.marking) {
      if (t.kind == MarkKind::Hole) {
        for (int x : Hh.cycles[Hh.of[t.side]])
          if (!in[x]) {
            q.g.marking[l] = {MarkKind::Hole, quo.from_old[x]};
            break;
          }
      } else {
        const auto& cyc = Hv.cycles[Hv.of[t.side]];
        if (std::none_of(cyc.begin(), cyc.end(), [&](int x) { return in[x] != 0; }))
          q.g.marking[l] = {MarkKind::Vertex, quo.from_old[t.side]};
      }
    }
    for (const auto& [v, l] : vertex_label) q.g.marking[l] = {MarkKind::Vertex, qv.cycles[v][0]};
    auto parts = split(q);
    if (j == 0) {
      Rational total = 0;
      for (const auto& p : parts) total += total_length(p.g);
      for (auto& p : parts) normalize(p.g, total);
    } else {
      for (auto& p : parts) normalize(p.g, total_length(p.g));
    }
    for (auto& p : parts) b.emit(p.g, j);

    // next stage: disjoint union of the reduced stable cores
    if (next.empty()) {
      if (j + 1 < k) fail(ErrorKind::NotPermissible, "Z_" + std::to_string(j + 1) + " has no stable part left");
      st = Stage{};
      break;
    }
    Stage merged;
    int offset = 0;
    std::vector<int> s0, s1;
    for (auto& ns : next) {
      for (int x = 0; x < ns.g.graph.sides(); ++x) {
        s0.push_back(ns.g.graph.sigma0()[x] + offset);
        s1.push_back(ns.g.graph.sigma1()[x] + offset);
        merged.g.length.push_back(ns.g.length[x]);
        merged.chain.push_back(ns.chain[x]);
      }
      for (const auto& [l, t] : ns.g.marking) merged.g.marking[l] = {t.kind, t.side + offset};
      offset += ns.g.graph.sides();
    }
    merged.g.graph = RibbonGraph(std::move(s0), std::move(s1));
    st = std::move(merged);
  }

  auto finals = st.g.graph.sides() ? split(st) : std::vector<Stage>{};
  for (auto& p : finals) {
    if (k == 0) {
      b.emit(p.g, 0);
      continue;
    }
    normalize(p.g, total_length(p.g));
    b.emit(p.g, k);
  }
  if (k == 0) {
    Rational total = 0;
    for (const auto& c : b.out.components) total += total_length(c.graph);
    for (auto& c : b.out.components) normalize(c.graph, total);
  }

  // discard unmarked spheres with two exceptional holes
  auto& comps = b.out.components;
  for (size_t i = 0; i < comps.size();) {
    const auto& cg = comps[i].graph;
    std::vector<std::string> holes;
    bool other = false;
    for (const auto& [l, t] : cg.marking) {
      if (t.kind == MarkKind::Hole && is_exceptional_label(l)) holes.push_back(l);
      else other = true;
    }
    if (other || holes.size() != 2 || cg.graph.genus() != 0 || cg.graph.num_holes() != 2) {
      ++i;
      continue;
    }
    auto& io = b.out.iota;
    std::vector<std::string> partners;
    for (const auto& h : holes)
      for (const auto& [x, y] : io) {
        if (x == h) partners.push_back(y);
        if (y == h) partners.push_back(x);
      }
    if (partners.size() != 2) fail(ErrorKind::InconsistentLabels, "unstable component without two partners");
    io.erase(std::remove_if(io.begin(), io.end(),
                            [&](const auto& p) {
                              return p.first == holes[0] || p.second == holes[0] || p.first == holes[1] ||
                                     p.second == holes[1];
                            }),
             io.end());
    io.emplace_back(partners[0], partners[1]);
    comps.erase(comps.begin() + i);
  }
  std::sort(b.out.iota.begin(), b.out.iota.end());

  // lambda hat from the order-0 P-holes
  Rational sum = 0;
  for (const auto& l : b.out.P) b.out.lambda_hat[l] = 0;
  for (const auto& c : comps) {
    if (c.order != 0) continue;
    for (const auto& [l, t] : c.graph.marking)
      if (t.kind == MarkKind::Hole) {
        Rational p = circumference(c.graph, l);
        b.out.lambda_hat[l] = p;
        sum += p;
      }
  }
  if (sum <= 0) fail(ErrorKind::ZeroPerimeter, "order-0 perimeters vanish");
  for (auto& [l, p] : b.out.lambda_hat) p /= sum;

  auto why = admissibility_failure(b.out, b.out.orders());
  if (!why.empty()) fail(ErrorKind::InconsistentLabels, "constructed order is not admissible: " + why);
  return b.out;
}

std::string admissibility_failure(const StableGraphData& s, const std::vector<int>& order) {
  const int n = static_cast<int>(s.components.size());
  if (static_cast<int>(order.size()) != n) return "order has the wrong size";
  std::set<std::string> P(s.P.begin(), s.P.end());
  std::map<std::string, std::pair<int, MarkKind>> where;
  for (int i = 0; i < n; ++i)
    for (const auto& [l, t] : s.components[i].graph.marking) where[l] = {i, t.kind};
  // iota is a fixed-point-free involution on the exceptional points
  std::map<std::string, std::string> partner;
  for (const auto& [a, c] : s.iota) {
    if (a == c || partner.count(a) || partner.count(c)) return "iota is not a fixed-point-free involution";
    if (!where.count(a) || !where.count(c)) return "iota names a missing point";
    partner[a] = c;
    partner[c] = a;
  }
  for (const auto& [l, w] : where) {
    if (P.count(l)) continue;
    if (!partner.count(l)) return "exceptional point " + l + " is unpaired";
  }
  for (const auto& [a, c] : partner)
    if (where[a].second == MarkKind::Hole && where[c].second == MarkKind::Hole) return "iota exchanges two holes";
  for (int i = 0; i < n; ++i) {
    const auto& cg = s.components[i].graph;
    auto ho = cg.graph.holes();
    if (order[i] == 0) {
      bool has = false;
      for (const auto& [l, t] : cg.marking)
        if (t.kind == MarkKind::Hole && P.count(l)) has = true;
      if (!has) return "an order-0 component has no P-marked hole";
    }
    int bound = -1;
    for (const auto& [l, t] : cg.marking)
      if (partner.count(l)) bound = std::max(bound, order[where[partner[l]].first]);
    if (order[i] > bound + 1) return "a component's order exceeds its partners' bound";
    for (const auto& [l, t] : cg.marking) {
      if (t.kind != MarkKind::Hole || P.count(l)) continue;
      if (order[i] == 0) return "exceptional hole " + l + " in order 0";
      auto [pc, pk] = where[partner[l]];
      if (pk != MarkKind::Vertex || order[pc] > order[i] - 1)
        return "exceptional hole " + l + " is not paired with a lower-order vertex";
    }
    // every hole is a special point
    int labeled = 0;
    for (const auto& [l, t] : cg.marking) labeled += t.kind == MarkKind::Hole;
    if (labeled != ho.size()) return "a hole carries no special point";
  }
  return "";
}

long count_admissible_orders(const StableGraphData& s, int max_components) {
  const int n = static_cast<int>(s.components.size());
  if (n > max_components) return -1;
  std::vector<int> order(n, 0);
  long count = 0;
  for (;;) {
    if (admissible_order(s, order)) ++count;
    int i = 0;
    while (i < n && ++order[i] == n) order[i++] = 0;
    if (i == n) break;
  }
  return count;
}

nlohmann::json stable_to_json(const StableGraphData& s) {
  nlohmann::json j;
  j["P"] = s.P;
  j["components"] = nlohmann::json::array();
  for (const auto& c : s.components) {
    auto g = graph_to_json(c.graph);
    g["order"] = c.order;
    j["components"].push_back(g);
  }
  j["iota"] = nlohmann::json::array();
  for (const auto& [a, c] : s.iota) j["iota"].push_back({a, c});
  nlohmann::json lh = nlohmann::json::object();
  for (const auto& [l, p] : s.lambda_hat) lh[l] = to_string(p);
  j["lambda_hat"] = lh;
  return j;
}

}  // namespace ribbon
