#include "ribbon/enumerate.hpp"

#include "ribbon/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace ribbon {

Profile Profile::parse(const std::string& csv) {
  Profile p;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) fail(ErrorKind::ParseError, "empty profile entry in '" + csv + "'");
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad profile entry '" + item + "'");
    }
    if (pos != item.size()) fail(ErrorKind::ParseError, "bad profile entry '" + item + "'");
    if (v < 0) fail(ErrorKind::InconsistentProfile, "negative vertex count in profile");
    p.m.push_back(v);
  }
  return p;
}

int Profile::weight() const {
  int w = 0;
  for (size_t i = 0; i < m.size(); ++i) w += static_cast<int>(i) * m[i];
  return w;
}

int Profile::odd_total() const {
  int w = 0;
  for (size_t i = 0; i < m.size(); ++i) w += (2 * static_cast<int>(i) + 1) * m[i];
  return w;
}

int Profile::num_vertices() const { return std::accumulate(m.begin(), m.end(), 0); }

std::vector<int> Profile::valencies() const {
  std::vector<int> v;
  for (size_t i = 0; i < m.size(); ++i)
    for (int k = 0; k < m[i]; ++k) v.push_back(2 * static_cast<int>(i) + 3);
  return v;
}

Profile Profile::trimmed() const {
  Profile p = *this;
  while (!p.m.empty() && p.m.back() == 0) p.m.pop_back();
  return p;
}

std::string Profile::str() const {
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s;
}

bool consistent(const Profile& p, int g, int n) { return p.odd_total() == 4 * g - 4 + 2 * n; }

int default_max_sides() {
  if (const char* e = std::getenv("RIBBONCALC_MAX_SIDES")) {
    int v = std::atoi(e);
    if (v > 0) return v;
  }
  return 30;
}

std::vector<std::string> default_labels(int n, const std::string& prefix) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

namespace {

struct CodeHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<size_t>(x + 1)) * 1099511628211ull;
    return h;
  }
};

using CellMap = std::unordered_map<std::vector<int>, Cell, CodeHash>;

// Exhaustive search over fixed-point-free involutions with sigma0 fixed.
class PairingSearch {
public:
  PairingSearch(const Perm& s0, int holes, bool reverse)
      : n_(static_cast<int>(s0.size())), s0_(s0), s0inv_(inverse(s0)), s1_(n_, -1),
        holes_(holes), reverse_(reverse), vertex_(orbits(s0).of),
        nv_(orbits(s0).size()), used_(nv_, 0) {
    auto vo = orbits(s0);
    for (const auto& c : vo.cycles) {
      first_.push_back(c[0]);
      valency_.push_back(static_cast<int>(c.size()));
    }
  }

  void run(const std::vector<int>& first_partners) {
    for (int b : first_partners) {
      if (!representative(0, b)) continue;
      pair(0, b);
      int c = closed_by(0, b);
      if (c <= holes_ && !(c == holes_ && n_ > 2)) dfs(c, 2);
      unpair(0, b);
    }
  }

  CellMap found;

private:
  // faces completed by pairing a with b (faces through a or b)
  int closed_by(int a, int b) const {
    int c = 0;
    bool a_closed = traces_closed(a), b_on_a = false;
    if (a_closed) {
      ++c;
      int x = a;
      do {
        if (x == b) b_on_a = true;
        x = s0inv_[s1_[x]];
      } while (x != a);
    }
    if (!b_on_a && traces_closed(b)) ++c;
    return c;
  }

  bool traces_closed(int a) const {
    int x = a;
    for (;;) {
      int y = s1_[x];
      if (y < 0) return false;
      x = s0inv_[y];
      if (x == a) return true;
    }
  }

  void dfs(int closed, int paired) {
    if (paired == n_) {
      if (closed == holes_) leaf();
      return;
    }
    // next side on a touched vertex; none left means a finished component
    int a = 0;
    while (a < n_ && (s1_[a] >= 0 || !used_[vertex_[a]])) ++a;
    if (a == n_) return;
    for (int k = 0; k < n_; ++k) {
      int b = reverse_ ? n_ - 1 - k : k;
      if (b == a || s1_[b] >= 0 || !representative(a, b)) continue;
      pair(a, b);
      int c = closed + closed_by(a, b);
      bool more = paired + 2 < n_;
      if (c < holes_ || (c == holes_ && !more)) dfs(c, paired + 2);
      unpair(a, b);
    }
  }

  // Untouched vertices of equal valency are interchangeable, and so are the
  // rotations of each; one choice per class is enough.
  bool representative(int a, int b) const {
    int w = vertex_[b];
    if (w == vertex_[a] || used_[w]) return true;
    if (b != first_[w]) return false;
    for (int u = 0; u < w; ++u)
      if (!used_[u] && u != vertex_[a] && valency_[u] == valency_[w]) return false;
    return true;
  }

  void pair(int a, int b) {
    s1_[a] = b;
    s1_[b] = a;
    ++used_[vertex_[a]];
    ++used_[vertex_[b]];
  }

  void unpair(int a, int b) {
    s1_[a] = s1_[b] = -1;
    --used_[vertex_[a]];
    --used_[vertex_[b]];
  }

  int find(std::vector<int>& p, int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }

  void leaf() {
    std::vector<int> p(nv_);
    std::iota(p.begin(), p.end(), 0);
    int comps = nv_;
    for (int x = 0; x < n_; ++x) {
      int u = find(p, vertex_[x]), v = find(p, vertex_[s1_[x]]);
      if (u != v) {
        p[u] = v;
        --comps;
      }
    }
    if (comps != 1) return;
    RibbonGraph g(s0_, Perm(s1_.begin(), s1_.end()));
    auto cf = canonical_form(g);
    if (found.count(cf.code)) return;
    Cell cell;
    cell.graph = relabel(MarkedGraph{g, {}}, cf.relabel);
    cell.aut = cf.aut;
    cell.form = cf;
    cell.form.relabel.clear();
    found.emplace(cf.code, std::move(cell));
  }

  int n_;
  Perm s0_, s0inv_;
  std::vector<int> s1_;
  int holes_;
  bool reverse_;
  std::vector<int> vertex_;
  int nv_;
  std::vector<int> used_;  // paired sides per vertex
  std::vector<int> first_, valency_;
};

std::vector<Cell> sorted_cells(CellMap&& m) {
  std::vector<Cell> out;
  out.reserve(m.size());
  for (auto& [k, c] : m) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const Cell& a, const Cell& b) { return a.form < b.form; });
  return out;
}

void check_size(int sides, const EnumOptions& opt) {
  if (sides > opt.max_sides)
    fail(ErrorKind::TooLarge, std::to_string(sides) + " sides exceed the bound of " +
                                  std::to_string(opt.max_sides));
}

}  // namespace

std::vector<Cell> enumerate_unmarked(const std::vector<int>& valencies, int holes, const EnumOptions& opt) {
  int sides = std::accumulate(valencies.begin(), valencies.end(), 0);
  if (sides == 0 || sides % 2 != 0 || holes < 1) return {};
  for (int v : valencies)
    if (v < 1) fail(ErrorKind::InconsistentProfile, "valency must be positive");
  check_size(sides, opt);
  Perm s0(sides);
  int pos = 0;
  for (int v : valencies) {
    for (int k = 0; k < v; ++k) s0[pos + k] = pos + (k + 1) % v;
    pos += v;
  }
  std::vector<int> partners;
  for (int b = 1; b < sides; ++b) partners.push_back(b);
  if (opt.reverse_search) std::reverse(partners.begin(), partners.end());

  int jobs = std::max(1, std::min(opt.jobs, static_cast<int>(partners.size())));
  std::vector<PairingSearch> workers;
  for (int w = 0; w < jobs; ++w) workers.emplace_back(s0, holes, opt.reverse_search);
  std::vector<std::vector<int>> share(jobs);
  for (size_t i = 0; i < partners.size(); ++i) share[i % jobs].push_back(partners[i]);
  if (jobs == 1) {
    workers[0].run(share[0]);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back([&, w] { workers[w].run(share[w]); });
    for (auto& t : threads) t.join();
  }
  CellMap all;
  for (auto& w : workers)
    for (auto& [k, c] : w.found) all.try_emplace(k, std::move(c));
  return sorted_cells(std::move(all));
}

std::vector<Cell> enumerate_marked(const std::vector<int>& valencies,
                                   const std::vector<std::string>& hole_labels,
                                   const std::map<std::string, int>& vertex_marks,
                                   const EnumOptions& opt) {
  auto base = enumerate_unmarked(valencies, static_cast<int>(hole_labels.size()), opt);
  std::vector<std::string> hl = hole_labels;
  std::sort(hl.begin(), hl.end());
  std::vector<std::pair<std::string, int>> qs(vertex_marks.begin(), vertex_marks.end());
  CellMap out;
  for (const auto& cell : base) {
    const auto& g = cell.graph.graph;
    auto ho = g.holes();
    auto vo = g.vertices();
    std::vector<int> perm(ho.size());
    std::iota(perm.begin(), perm.end(), 0);
    Marking m;
    std::vector<char> used(vo.size(), 0);
    std::function<void(size_t)> place = [&](size_t k) {
      if (k == qs.size()) {
        auto cf = canonical_form(g, m);
        if (out.count(cf.code) && out.at(cf.code).form == cf) return;
        Cell c;
        c.graph = relabel(MarkedGraph{g, m}, cf.relabel);
        c.aut = cf.aut;
        c.form = cf;
        c.form.relabel.clear();
        out.emplace(cf.code, std::move(c));
        return;
      }
      for (int v = 0; v < vo.size(); ++v) {
        if (used[v] || static_cast<int>(vo.cycles[v].size()) != qs[k].second) continue;
        used[v] = 1;
        m[qs[k].first] = {MarkKind::Vertex, vo.cycles[v][0]};
        place(k + 1);
        m.erase(qs[k].first);
        used[v] = 0;
      }
    };
    do {
      m.clear();
      for (size_t i = 0; i < hl.size(); ++i) m[hl[i]] = {MarkKind::Hole, ho.cycles[perm[i]][0]};
      place(0);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return sorted_cells(std::move(out));
}

std::vector<Cell> enumerate(int g, const std::vector<std::string>& P, const Profile& profile,
                            const std::map<std::string, int>& vertex_marks, const EnumOptions& opt) {
  std::vector<std::string> holes;
  for (const auto& p : P)
    if (!vertex_marks.count(p)) holes.push_back(p);
  for (const auto& [q, v] : vertex_marks) {
    if (std::find(P.begin(), P.end(), q) == P.end())
      fail(ErrorKind::BadMarking, "vertex mark " + q + " is not a label");
    if (v < 3 || v % 2 == 0) fail(ErrorKind::InconsistentProfile, "vertex marks need odd valency >= 3");
  }
  int n = static_cast<int>(holes.size());
  if (g < 0 || !consistent(profile, g, n))
    fail(ErrorKind::InconsistentProfile, "profile " + profile.str() + " does not fit genus " +
                                             std::to_string(g) + " with " + std::to_string(n) + " holes");
  for (const auto& [q, v] : vertex_marks) {
    int need = 0;
    for (const auto& [q2, v2] : vertex_marks) need += v2 == v;
    if (profile.count((v - 3) / 2) < need)
      fail(ErrorKind::InconsistentProfile, "not enough vertices of valency " + std::to_string(v));
  }
  return enumerate_marked(profile.valencies(), holes, vertex_marks, opt);
}

std::vector<std::vector<int>> degree_sequences(int g, int n) {
  int total = 4 * g - 4 + 2 * n;
  std::vector<std::vector<int>> out;
  if (total <= 0) return out;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (left == 0) {
      std::vector<int> v;
      for (int p : parts) v.push_back(p + 2);
      std::sort(v.begin(), v.end());
      out.push_back(v);
      return;
    }
    for (int p = std::min(left, maxpart); p >= 1; --p) {
      parts.push_back(p);
      rec(left - p, p);
      parts.pop_back();
    }
  };
  rec(total, total);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CellFamily> enumerate_all_cells(int g, const std::vector<std::string>& P,
                                            std::optional<int> max_excess, const EnumOptions& opt) {
  int n = static_cast<int>(P.size());
  if (g < 0 || n < 1 || 2 * g - 2 + n <= 0)
    fail(ErrorKind::InconsistentProfile, "need 2g-2+n > 0 and n >= 1");
  std::vector<CellFamily> out;
  for (const auto& degs : degree_sequences(g, n)) {
    int excess = 0;
    for (int d : degs) excess += d - 3;
    if (max_excess && excess > 2 * *max_excess) continue;
    CellFamily fam{degs, enumerate_marked(degs, P, {}, opt)};
    if (!fam.cells.empty()) out.push_back(std::move(fam));
  }
  return out;
}

std::map<int, int> cells_by_dimension(const std::vector<CellFamily>& fams) {
  std::map<int, int> out;
  for (const auto& f : fams) out[std::accumulate(f.valencies.begin(), f.valencies.end(), 0) / 2] += static_cast<int>(f.cells.size());
  return out;
}

Rational orbifold_euler(int g, int n, const EnumOptions& opt) {
  Rational chi = 0;
  for (const auto& fam : enumerate_all_cells(g, default_labels(n), std::nullopt, opt)) {
    for (const auto& c : fam.cells) {
      int e = c.graph.graph.num_edges();
      chi += Rational((e - n) % 2 == 0 ? 1 : -1, c.aut);
    }
  }
  return chi;
}

Rational orbifold_euler_unlabeled(int g, int n, const EnumOptions& opt) {
  if (g < 0 || n < 1 || 2 * g - 2 + n <= 0)
    fail(ErrorKind::InconsistentProfile, "need 2g-2+n > 0 and n >= 1");
  Rational chi = 0;
  for (const auto& degs : degree_sequences(g, n)) {
    for (const auto& c : enumerate_unmarked(degs, n, opt)) {
      int e = c.graph.graph.num_edges();
      chi += Rational((e - n) % 2 == 0 ? 1 : -1, c.aut);
    }
  }
  return chi * Rational(factorial(n));
}

}  // namespace ribbon
