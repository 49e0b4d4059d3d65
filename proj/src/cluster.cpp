#include "ribbon/cluster.hpp"

#include "ribbon/comb.hpp"
#include "ribbon/degeneration.hpp"
#include "ribbon/error.hpp"
#include "ribbon/subgraph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace ribbon {

int AdmissibleClusterSpec::rho_mu() const { return std::accumulate(rho.begin(), rho.end(), 0); }

void AdmissibleClusterSpec::validate() const {
  if (rho.empty()) fail(ErrorKind::NegativeCount, "a cluster needs at least one hole");
  if (rho[0] < -1) fail(ErrorKind::NegativeCount, "rho of the first hole must be >= -1");
  for (size_t i = 1; i < rho.size(); ++i)
    if (rho[i] < 0) fail(ErrorKind::NegativeCount, "rho values after the first must be >= 0");
}

AdmissibleClusterSpec AdmissibleClusterSpec::parse(const std::string& csv) {
  AdmissibleClusterSpec s;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      s.rho.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad rho entry '" + tok + "'");
    }
  }
  s.validate();
  return s;
}

namespace {

std::string qlabel(int j) { return "q" + std::to_string(j + 1); }

// Subdivides every edge (given by its smaller side) with count[e] bivalent vertices.
// Old sides keep their indices; returns one side of each new vertex.
RibbonGraph subdivide(const RibbonGraph& g, const std::map<int, int>& count, std::vector<int>& bivalent) {
  int n = g.sides();
  for (const auto& [e, k] : count) n += 2 * k;
  Perm s0(n), s1(n);
  for (int s = 0; s < g.sides(); ++s) {
    s0[s] = g.sigma0()[s];
    s1[s] = g.sigma1()[s];
  }
  int next = g.sides();
  for (const auto& [a, k] : count) {
    if (k == 0) continue;
    int b = g.sigma1()[a];
    int prev = a;
    for (int i = 0; i < k; ++i) {
      int x = next++, y = next++;
      s0[x] = y;
      s0[y] = x;
      s1[prev] = x;
      s1[x] = prev;
      bivalent.push_back(x);
      prev = y;
    }
    s1[prev] = b;
    s1[b] = prev;
  }
  return RibbonGraph(std::move(s0), std::move(s1));
}

std::vector<int> edges_of_holes(const RibbonGraph& g, const std::vector<int>& holes) {
  auto ho = g.holes();
  std::set<int> e;
  for (int h : holes)
    for (int s : ho.cycles[h]) e.insert(std::min(s, g.sigma1()[s]));
  return {e.begin(), e.end()};
}

// hole index per label position: 0 -> "0", j+1 -> q_{j+1}
std::vector<int> hole_indices(const MarkedGraph& g, int h) {
  std::vector<int> idx;
  idx.push_back(hole_index_of(g.graph, g.marking, "0"));
  for (int j = 0; j < h; ++j) idx.push_back(hole_index_of(g.graph, g.marking, qlabel(j)));
  return idx;
}

}  // namespace

bool is_admissible_cluster(const MarkedGraph& g, const AdmissibleClusterSpec& spec) {
  spec.validate();
  const auto& G = g.graph;
  const int h = spec.h();
  if (!G.connected() || G.genus() != 0) return false;
  if (static_cast<int>(g.marking.size()) != h + 2 || G.num_holes() != h + 1) return false;
  auto vm = g.marking.find("v");
  if (vm == g.marking.end() || vm->second.kind != MarkKind::Vertex) return false;
  std::vector<int> idx;
  try {
    idx = hole_indices(g, h);
  } catch (const Error&) {
    return false;
  }
  auto ho = G.holes();
  auto vo = G.vertices();

  // valencies two or three; bivalent vertices border hole 0
  std::set<int> zero_vertices;
  for (int s : ho.cycles[idx[0]]) zero_vertices.insert(vo.of[s]);
  for (int v = 0; v < vo.size(); ++v) {
    auto d = vo.cycles[v].size();
    if (d != 2 && d != 3) return false;
    if (d == 2 && !zero_vertices.count(v)) return false;
  }
  if (vo.cycles[vo.of[vm->second.side]].size() != 2) return false;

  // side counts, excluding sides that border later holes
  for (int j = 0; j < h; ++j) {
    std::set<int> later(idx.begin() + j + 2, idx.end());
    int count = 0;
    for (int s : ho.cycles[idx[j + 1]])
      if (!later.count(ho.of[G.sigma1()[s]])) ++count;
    if (count != 2 * spec.rho[j] + 3) return false;
  }

  // mu is a cluster: chained by shared vertices
  std::vector<std::set<int>> verts(h);
  for (int j = 0; j < h; ++j)
    for (int s : ho.cycles[idx[j + 1]]) verts[j].insert(vo.of[s]);
  std::vector<int> reach(h, 0);
  reach[0] = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (int a = 0; a < h; ++a)
      for (int b = 0; b < h; ++b)
        if (reach[a] && !reach[b] &&
            std::any_of(verts[a].begin(), verts[a].end(), [&](int v) { return verts[b].count(v) > 0; })) {
          reach[b] = 1;
          grew = true;
        }
  }
  if (std::count(reach.begin(), reach.end(), 1) != h) return false;

  // every closure of a hole is a disk
  for (int i = 0; i <= h; ++i) {
    auto t = topology_of_edges(G, edges_of_holes(G, {idx[i]}), {idx[i]});
    if (t.kind != HoleTopology::Kind::Disk) return false;
  }

  // shrinking q_h, ..., q_j leaves one positive component
  for (int j = h; j >= 2; --j) {
    std::vector<int> S(idx.begin() + j, idx.end());
    auto Z = edges_of_holes(G, S);
    auto in = edge_mask(G, Z);
    int positive = 0;
    if (static_cast<int>(Z.size()) < G.num_edges()) positive += quotient(G, Z).graph.num_components();
    for (int i = 0; i < j; ++i) {
      const auto& cyc = ho.cycles[idx[i]];
      if (std::all_of(cyc.begin(), cyc.end(), [&](int s) { return in[s] != 0; })) ++positive;
    }
    if (positive != 1) return false;
  }
  return true;
}

namespace {

struct Search {
  const AdmissibleClusterSpec& spec;
  std::map<CanonicalForm, MarkedGraph> found;
  long candidates = 0;

  void consider(const RibbonGraph& g, Marking m, const std::vector<int>& bivalent) {
    for (int x : bivalent) {
      m["v"] = {MarkKind::Vertex, x};
      ++candidates;
      MarkedGraph mg{g, m};
      if (!is_admissible_cluster(mg, spec)) continue;
      auto cf = canonical_form(g, m);
      if (found.count(cf)) continue;
      auto rep = relabel(mg, cf.relabel);
      cf.relabel.clear();
      found.emplace(std::move(cf), std::move(rep));
    }
  }

  void polygon() {
    const int k = 2 * spec.rho[0] + 3;
    Perm s0(2 * k), s1(2 * k);
    for (int i = 0; i < k; ++i) {
      s0[2 * i] = 2 * i + 1;
      s0[2 * i + 1] = 2 * i;
      int a = 2 * i + 1, b = (2 * i + 2) % (2 * k);
      s1[a] = b;
      s1[b] = a;
    }
    RibbonGraph g(std::move(s0), std::move(s1));
    auto ho = g.holes();
    std::vector<int> bivalent;
    for (int i = 0; i < k; ++i) bivalent.push_back(2 * i);
    for (int inner = 0; inner < 2; ++inner) {
      Marking m;
      m["0"] = {MarkKind::Hole, ho.cycles[inner][0]};
      m[qlabel(0)] = {MarkKind::Hole, ho.cycles[1 - inner][0]};
      consider(g, m, bivalent);
    }
  }

  void core(const RibbonGraph& c) {
    const int h = spec.h();
    auto ho = c.holes();
    std::vector<int> perm(h + 1);
    std::iota(perm.begin(), perm.end(), 0);
    // perm[i] = core hole carrying label position i
    do {
      std::vector<int> pos_of(h + 1);
      for (int i = 0; i <= h; ++i) pos_of[perm[i]] = i;
      std::vector<int> need(h);
      std::vector<std::vector<int>> slots(h);
      bool ok = true;
      for (int j = 0; j < h && ok; ++j) {
        int count = 0;
        for (int s : ho.cycles[perm[j + 1]]) {
          int other = pos_of[ho.of[c.sigma1()[s]]];
          if (other <= j + 1) ++count;
          if (other == 0) slots[j].push_back(std::min(s, c.sigma1()[s]));
        }
        need[j] = 2 * spec.rho[j] + 3 - count;
        if (need[j] < 0 || (need[j] > 0 && slots[j].empty())) ok = false;
      }
      if (!ok) continue;
      Marking m;
      m["0"] = {MarkKind::Hole, ho.cycles[perm[0]][0]};
      for (int j = 0; j < h; ++j) m[qlabel(j)] = {MarkKind::Hole, ho.cycles[perm[j + 1]][0]};
      std::map<int, int> count;
      std::function<void(int, int, int)> place = [&](int j, int slot, int left) {
        if (j == h) {
          std::vector<int> bivalent;
          auto g = subdivide(c, count, bivalent);
          consider(g, m, bivalent);
          return;
        }
        const auto& sl = slots[j];
        if (sl.empty()) {
          place(j + 1, 0, j + 1 < h ? need[j + 1] : 0);
          return;
        }
        if (slot + 1 == static_cast<int>(sl.size())) {
          count[sl[slot]] = left;
          place(j + 1, 0, j + 1 < h ? need[j + 1] : 0);
          count.erase(sl[slot]);
          return;
        }
        for (int k = 0; k <= left; ++k) {
          count[sl[slot]] = k;
          place(j, slot + 1, left - k);
        }
        count.erase(sl[slot]);
      };
      place(0, 0, need[0]);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
};

}  // namespace

namespace {

Search run_search(const AdmissibleClusterSpec& spec, int max_sides, const EnumOptions& opt, int& cores) {
  spec.validate();
  const int h = spec.h();
  // every admissible configuration has 3h - 3 core edges and 2 rho_mu + 3 bivalent vertices
  const int sides = 2 * (3 * h - 3 + std::max(0, 2 * spec.rho_mu() + 3));
  if (sides > max_sides)
    fail(ErrorKind::TooLarge, std::to_string(sides) + " sides exceed the bound of " + std::to_string(max_sides));
  Search s{spec, {}, 0};
  if (h == 1) {
    s.polygon();
    cores = 1;
    return s;
  }
  EnumOptions o = opt;
  o.max_sides = std::max(o.max_sides, 6 * h - 6);
  auto cs = enumerate_unmarked(std::vector<int>(2 * h - 2, 3), h + 1, o);
  cores = static_cast<int>(cs.size());
  for (const auto& cell : cs) s.core(cell.graph.graph);
  return s;
}

}  // namespace

std::vector<MarkedGraph> admissible_clusters(const AdmissibleClusterSpec& spec, int max_sides,
                                             const EnumOptions& opt) {
  int cores = 0;
  auto s = run_search(spec, max_sides, opt, cores);
  std::vector<MarkedGraph> out;
  for (auto& [cf, g] : s.found) out.push_back(std::move(g));
  return out;
}

BruteForceStats count_admissible(const AdmissibleClusterSpec& spec, int max_sides, const EnumOptions& opt) {
  BruteForceStats st;
  auto s = run_search(spec, max_sides, opt, st.cores);
  st.count = static_cast<Integer>(s.found.size());
  st.candidates = s.candidates;
  return st;
}

namespace {

Integer recurrence(const std::vector<int>& rho) {
  const int h = static_cast<int>(rho.size());
  if (h <= 1) return 1;
  const int rho_mu = std::accumulate(rho.begin(), rho.end(), 0);
  const Integer lead = 2 * rho_mu + 3;
  if (h == 2) return lead;
  if (rho[0] == -1) return lead * recurrence(std::vector<int>(rho.begin() + 1, rho.end()));

  // distribute q_{i_3}..q_{i_h} into t ordered slots; subclusters keep their order
  const int t = 2 * (rho[0] + rho[1]) + 5;
  const std::vector<int> rest(rho.begin() + 2, rho.end());
  std::vector<int> slot(rest.size(), 0);
  Integer a = 0, b = 0;
  for (;;) {
    std::vector<std::vector<int>> sub(t);
    for (size_t i = 0; i < rest.size(); ++i) sub[slot[i]].push_back(rest[i]);
    Integer prod = 1;
    for (const auto& s : sub) prod *= recurrence(s);
    a += prod;
    const int rho1 = std::accumulate(sub[0].begin(), sub[0].end(), 0);
    if (!sub[0].empty() && rho1 >= 1) b += 2 * rho1 * prod;
    size_t i = 0;
    while (i < slot.size() && ++slot[i] == t) slot[i++] = 0;
    if (i == slot.size()) break;
  }
  return lead * a + lead * b;
}

}  // namespace

Integer count_by_recurrence(const AdmissibleClusterSpec& spec) {
  spec.validate();
  return recurrence(spec.rho);
}

Integer count_closed(const AdmissibleClusterSpec& spec) {
  spec.validate();
  return c_mu(spec.rho_mu(), spec.h());
}

}  // namespace ribbon
