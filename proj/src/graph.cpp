#include "ribbon/graph.hpp"

#include "ribbon/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace ribbon {

Perm inverse(const Perm& p) {
  Perm q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

Orbits orbits(const Perm& p) {
  Orbits o;
  o.of.assign(p.size(), -1);
  for (size_t s = 0; s < p.size(); ++s) {
    if (o.of[s] >= 0) continue;
    std::vector<int> cyc;
    int x = static_cast<int>(s);
    do {
      o.of[x] = o.size();
      cyc.push_back(x);
      x = p[x];
    } while (x != static_cast<int>(s));
    o.cycles.push_back(std::move(cyc));
  }
  return o;
}

namespace {

bool is_permutation(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace

RibbonGraph::RibbonGraph(Perm sigma0, Perm sigma1) : s0_(std::move(sigma0)), s1_(std::move(sigma1)) {
  if (s0_.size() != s1_.size()) fail(ErrorKind::DomainMismatch, "sigma0 and sigma1 act on different sets");
  if (s0_.empty()) fail(ErrorKind::EmptySides, "a ribbon graph needs at least one side");
  if (!is_permutation(s0_) || !is_permutation(s1_))
    fail(ErrorKind::DomainMismatch, "sigma0/sigma1 is not a permutation of the side set");
  for (int x = 0; x < sides(); ++x) {
    if (s1_[x] == x) fail(ErrorKind::FixedPointInvolution, "sigma1 fixes side " + std::to_string(x + 1));
    if (s1_[s1_[x]] != x) fail(ErrorKind::FixedPointInvolution, "sigma1 is not an involution");
  }
}

RibbonGraph RibbonGraph::from_cycles(int sides, const std::vector<std::vector<int>>& c0,
                                     const std::vector<std::vector<int>>& c1) {
  auto build = [sides](const std::vector<std::vector<int>>& cs, bool& range_ok) {
    Perm p(std::max(sides, 0));
    std::iota(p.begin(), p.end(), 0);
    std::vector<char> used(p.size(), 0);
    for (const auto& c : cs) {
      for (size_t i = 0; i < c.size(); ++i) {
        int x = c[i] - 1, y = c[(i + 1) % c.size()] - 1;
        if (x < 0 || x >= sides || y < 0 || y >= sides || used[x]) {
          range_ok = false;
          return p;
        }
        used[x] = 1;
        p[x] = y;
      }
    }
    return p;
  };
  bool ok0 = true, ok1 = true;
  Perm p0 = build(c0, ok0), p1 = build(c1, ok1);
  if (sides <= 0) fail(ErrorKind::EmptySides, "a ribbon graph needs at least one side");
  if (!ok0 || !ok1) fail(ErrorKind::DomainMismatch, "cycle entries outside 1..sides or repeated");
  return RibbonGraph(std::move(p0), std::move(p1));
}

Perm RibbonGraph::sigma_inf() const { return compose(inverse(s0_), s1_); }

std::vector<int> RibbonGraph::component_of() const {
  std::vector<int> comp(sides(), -1);
  int c = 0;
  for (int s = 0; s < sides(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : {s0_[x], s1_[x]}) {
        if (comp[y] < 0) {
          comp[y] = c;
          stack.push_back(y);
        }
      }
    }
    ++c;
  }
  return comp;
}

int RibbonGraph::num_components() const {
  auto c = component_of();
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

int RibbonGraph::genus() const {
  if (!connected()) fail(ErrorKind::Disconnected, "genus is defined for connected graphs only");
  int chi = num_vertices() - num_edges() + num_holes();
  int twice = 2 - chi;
  if (twice < 0 || twice % 2 != 0) fail(ErrorKind::DomainMismatch, "Euler characteristic is not even");
  return twice / 2;
}

RibbonGraph dual(const RibbonGraph& g) { return RibbonGraph(inverse(g.sigma_inf()), g.sigma1()); }

RibbonGraph contract_edge(const RibbonGraph& g, int side, std::vector<int>* old_to_new) {
  if (side < 0 || side >= g.sides()) fail(ErrorKind::NoSuchEdge, "no side " + std::to_string(side + 1));
  const Perm& s0 = g.sigma0();
  const Perm& s1 = g.sigma1();
  int a = side, b = s1[side];
  auto vert = g.vertices();
  if (vert.of[a] == vert.of[b]) fail(ErrorKind::LoopContraction, "edge is a loop");
  if (g.sides() == 2) fail(ErrorKind::EmptySides, "contracting the only edge leaves nothing");
  std::vector<int> map(g.sides(), -1);
  int n = 0;
  for (int x = 0; x < g.sides(); ++x)
    if (x != a && x != b) map[x] = n++;
  Perm t0(n), t1(n);
  for (int x = 0; x < g.sides(); ++x) {
    if (map[x] < 0) continue;
    int t = s0[x];
    for (int guard = 0; t == a || t == b; ++guard) {
      t = (t == a) ? s0[b] : s0[a];
      if (guard > 4) fail(ErrorKind::EmptySides, "degenerate contraction");
    }
    t0[map[x]] = map[t];
    t1[map[x]] = map[s1[x]];
  }
  if (old_to_new) *old_to_new = map;
  return RibbonGraph(std::move(t0), std::move(t1));
}

void check_marking(const RibbonGraph& g, const Marking& m, bool all_holes) {
  auto vo = g.vertices();
  auto ho = g.holes();
  std::set<int> hv, vv;
  for (const auto& [label, t] : m) {
    if (t.side < 0 || t.side >= g.sides())
      fail(ErrorKind::BadMarking, "label " + label + " targets a nonexistent side");
    auto& used = t.kind == MarkKind::Hole ? hv : vv;
    int orbit = t.kind == MarkKind::Hole ? ho.of[t.side] : vo.of[t.side];
    if (!used.insert(orbit).second) fail(ErrorKind::BadMarking, "marking is not injective at " + label);
  }
  if (all_holes && static_cast<int>(hv.size()) != ho.size())
    fail(ErrorKind::BadMarking, "some hole is unmarked");
}

bool is_reduced(const RibbonGraph& g, const Marking& m) {
  auto vo = g.vertices();
  std::vector<char> marked(vo.size(), 0);
  for (const auto& [label, t] : m)
    if (t.kind == MarkKind::Vertex) marked[vo.of[t.side]] = 1;
  for (int v = 0; v < vo.size(); ++v)
    if (!marked[v] && vo.cycles[v].size() < 3) return false;
  return true;
}

std::optional<std::string> hole_label(const RibbonGraph& g, const Marking& m, int hole_index) {
  auto ho = g.holes();
  for (const auto& [label, t] : m)
    if (t.kind == MarkKind::Hole && ho.of[t.side] == hole_index) return label;
  return std::nullopt;
}

int hole_index_of(const RibbonGraph& g, const Marking& m, const std::string& label) {
  auto it = m.find(label);
  if (it == m.end()) fail(ErrorKind::BadMarking, "unknown label " + label);
  if (it->second.kind != MarkKind::Hole) fail(ErrorKind::VertexMark, label + " marks a vertex");
  return g.holes().of[it->second.side];
}

MarkedMetricGraph with_unit_lengths(const MarkedGraph& g) {
  return {g.graph, g.marking, std::vector<Rational>(g.graph.sides(), Rational(1))};
}

void check_metric(const MarkedMetricGraph& g) {
  if (static_cast<int>(g.length.size()) != g.graph.sides())
    fail(ErrorKind::BadMetric, "length vector has the wrong size");
  for (int x = 0; x < g.graph.sides(); ++x) {
    if (g.length[x] <= 0) fail(ErrorKind::BadMetric, "edge lengths must be positive");
    if (g.length[x] != g.length[g.graph.sigma1()[x]]) fail(ErrorKind::BadMetric, "sides of an edge disagree");
  }
}

Rational circumference(const MarkedMetricGraph& g, const std::string& hole) {
  int h = hole_index_of(g.graph, g.marking, hole);
  Rational s = 0;
  auto ho = g.graph.holes();
  for (int x : ho.cycles[h]) s += g.length[x];
  return s;
}

Rational total_length(const MarkedMetricGraph& g) {
  Rational s = 0;
  for (int x = 0; x < g.graph.sides(); ++x)
    if (x < g.graph.sigma1()[x]) s += g.length[x];
  return s;
}

CanonicalForm canonical_form(const RibbonGraph& g, const Marking& m) {
  if (!g.connected()) fail(ErrorKind::Disconnected, "canonical form needs a connected graph");
  const int n = g.sides();
  const Perm& s0 = g.sigma0();
  const Perm& s1 = g.sigma1();

  CanonicalForm out;
  std::vector<int> h_attr(n, 0), v_attr(n, 0);
  if (!m.empty()) {
    for (const auto& [label, t] : m)
      out.labels.push_back((t.kind == MarkKind::Hole ? "h:" : "v:") + label);
    std::sort(out.labels.begin(), out.labels.end());
    auto ho = g.holes();
    auto vo = g.vertices();
    std::vector<int> hole_rank(ho.size(), 0), vert_rank(vo.size(), 0);
    for (const auto& [label, t] : m) {
      bool hole = t.kind == MarkKind::Hole;
      auto key = (hole ? "h:" : "v:") + label;
      int r = static_cast<int>(std::lower_bound(out.labels.begin(), out.labels.end(), key) -
                               out.labels.begin()) + 1;
      if (hole) hole_rank[ho.of[t.side]] = r;
      else vert_rank[vo.of[t.side]] = r;
    }
    for (int x = 0; x < n; ++x) {
      h_attr[x] = hole_rank[ho.of[x]];
      v_attr[x] = vert_rank[vo.of[x]];
    }
  }

  const int width = 4;
  std::vector<int> best(width * n), cur(width * n), lab(n), order(n), best_lab(n);
  bool have = false;
  int count = 0;
  for (int r = 0; r < n; ++r) {
    std::fill(lab.begin(), lab.end(), -1);
    lab[r] = 0;
    order[0] = r;
    int sz = 1;
    int state = have ? 0 : -1;  // 0 equal so far, -1 smaller, 1 larger
    for (int i = 0; i < n && state != 1; ++i) {
      int x = order[i];
      for (int y : {s0[x], s1[x]}) {
        if (lab[y] < 0) {
          lab[y] = sz;
          order[sz++] = y;
        }
      }
      int vals[width] = {lab[s0[x]], lab[s1[x]], h_attr[x], v_attr[x]};
      for (int k = 0; k < width; ++k) {
        int p = width * i + k;
        cur[p] = vals[k];
        if (state == 0) {
          if (vals[k] < best[p]) state = -1;
          else if (vals[k] > best[p]) { state = 1; break; }
        }
      }
    }
    if (state == 1) continue;
    if (state == -1) {
      best.swap(cur);
      best_lab = lab;
      count = 1;
      have = true;
    } else {
      ++count;
    }
  }
  out.code.reserve(best.size() + 1);
  out.code.push_back(n);
  out.code.insert(out.code.end(), best.begin(), best.end());
  out.aut = count;
  out.relabel = best_lab;
  return out;
}

MarkedGraph relabel(const MarkedGraph& g, const std::vector<int>& map) {
  int n = g.graph.sides();
  Perm t0(n), t1(n);
  for (int x = 0; x < n; ++x) {
    t0[map[x]] = map[g.graph.sigma0()[x]];
    t1[map[x]] = map[g.graph.sigma1()[x]];
  }
  MarkedGraph out{RibbonGraph(std::move(t0), std::move(t1)), {}};
  // normalize targets to the smallest side of their orbit
  auto ho = out.graph.holes();
  auto vo = out.graph.vertices();
  for (const auto& [label, t] : g.marking) {
    int y = map[t.side];
    int rep = t.kind == MarkKind::Hole ? ho.cycles[ho.of[y]][0] : vo.cycles[vo.of[y]][0];
    out.marking[label] = {t.kind, rep};
  }
  return out;
}

MarkedGraph canonical_representative(const MarkedGraph& g) {
  auto cf = canonical_form(g.graph, g.marking);
  return relabel(g, cf.relabel);
}

std::string cycles_to_string(const Perm& p) {
  std::ostringstream os;
  for (const auto& c : orbits(p).cycles) {
    os << '(';
    for (size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i] + 1;
    os << ')';
  }
  return os.str();
}

}  // namespace ribbon
