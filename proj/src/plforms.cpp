#include "ribbon/plforms.hpp"

#include "ribbon/error.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace ribbon {

RMatrix RMatrix::transpose() const {
  RMatrix t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void RMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

RMatrix& RMatrix::operator+=(const RMatrix& o) {
  if (o.r_ != r_ || o.c_ != c_) fail(ErrorKind::DomainMismatch, "matrix shapes differ");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

RMatrix& RMatrix::operator/=(const Rational& d) {
  for (auto& x : a_) x /= d;
  return *this;
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::DomainMismatch, "matrix shapes differ");
  RMatrix p(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) p(i, j) += a(i, k) * b(k, j);
    }
  return p;
}

RMatrix operator/(RMatrix a, const Rational& d) { return a /= d; }

namespace {

std::vector<int> all_edges(const RibbonGraph& g) {
  std::vector<int> e;
  for (int s = 0; s < g.sides(); ++s)
    if (s < g.sigma1()[s]) e.push_back(s);
  return e;
}

RMatrix zeros(int r, int c) {
  RMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = 0;
  return m;
}

// U^T J U for the side cycle of one hole, over the given edge coordinates
RMatrix hole_matrix(const RibbonGraph& g, const std::vector<int>& cycle, const std::vector<int>& edges) {
  const int k = static_cast<int>(cycle.size());
  const int n = static_cast<int>(edges.size());
  std::map<int, int> col;
  for (int i = 0; i < n; ++i) col[edges[i]] = i;
  RMatrix U = zeros(k, n);
  for (int i = 0; i < k; ++i) {
    int s = cycle[i];
    U(i, col.at(std::min(s, g.sigma1()[s]))) += 1;
  }
  RMatrix J = zeros(k, k);
  for (int s = 0; s < k; ++s)
    for (int t = s + 1; t < k; ++t) {
      J(s, t) = 1;
      J(t, s) = -1;
    }
  return U.transpose() * J * U;
}

int hole_of(const MarkedMetricGraph& g, const std::string& p) {
  auto it = g.marking.find(p);
  if (it == g.marking.end()) fail(ErrorKind::BadMarking, "no marking " + p);
  if (it->second.kind != MarkKind::Hole) fail(ErrorKind::VertexMark, p + " marks a vertex");
  return g.graph.holes().of[it->second.side];
}

}  // namespace

CellForm omega_on_cell(const MarkedMetricGraph& g, const std::string& p) {
  check_metric(g);
  int h = hole_of(g, p);
  Rational per = circumference(g, p);
  if (per <= 0) fail(ErrorKind::ZeroPerimeter, "hole " + p + " has zero perimeter");
  CellForm f;
  f.edges = all_edges(g.graph);
  auto ho = g.graph.holes();
  f.A = hole_matrix(g.graph, ho.cycles[h], f.edges) / (per * per);
  return f;
}

CellForm big_omega(const MarkedMetricGraph& g) {
  check_metric(g);
  CellForm f;
  f.edges = all_edges(g.graph);
  const int n = f.dim();
  f.A = zeros(n, n);
  // l_p^2 / (2 l_p)^2 = 1/4 for every hole
  auto ho = g.graph.holes();
  for (const auto& cyc : ho.cycles) f.A += hole_matrix(g.graph, cyc, f.edges) / Rational(4);
  return f;
}

Rational pfaffian(const RMatrix& A) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) fail(ErrorKind::OddDimension, "Pfaffian of a non-square matrix");
  if (n % 2) return 0;
  if (n == 0) return 1;
  if (n > 40) fail(ErrorKind::TooLarge, "Pfaffian dimension above 40");
  std::unordered_map<std::uint64_t, Rational> memo;
  std::function<Rational(std::uint64_t)> pf = [&](std::uint64_t mask) -> Rational {
    if (mask == 0) return 1;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int i = __builtin_ctzll(mask);
    std::uint64_t rest = mask & ~(std::uint64_t(1) << i);
    Rational sum = 0;
    int m = 0;
    for (int j = i + 1; j < n; ++j) {
      if (!(rest >> j & 1)) continue;
      ++m;
      if (A(i, j) == 0) continue;
      Rational term = A(i, j) * pf(rest & ~(std::uint64_t(1) << j));
      if (m % 2) sum += term;
      else sum -= term;
    }
    memo.emplace(mask, sum);
    return sum;
  };
  return pf((n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1));
}

Rational determinant(const RMatrix& A_in) {
  const int n = static_cast<int>(A_in.rows());
  if (A_in.cols() != n) fail(ErrorKind::OddDimension, "determinant of a non-square matrix");
  RMatrix A = A_in;
  Rational prev = 1;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    while (piv < n && A(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      A.swap_rows(k, piv);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
      A(i, k) = 0;
    }
    prev = A(k, k);
  }
  return n == 0 ? Rational(1) : sign * A(n - 1, n - 1);
}

Rational wedge_power_top(const CellForm& form, int k, const RMatrix& basis) {
  if (k < 0) fail(ErrorKind::OddDimension, "negative wedge power");
  if (basis.cols() % 2 || basis.cols() != 2 * k)
    fail(ErrorKind::OddDimension, "slice dimension " + std::to_string(basis.cols()) + " is not 2k");
  if (basis.rows() != form.dim()) fail(ErrorKind::OddDimension, "slice basis has the wrong ambient dimension");
  if (k == 0) return 1;
  RMatrix S = basis.transpose() * form.A * basis;
  return Rational(factorial(k)) * pfaffian(S);
}

RMatrix kernel_basis(const RMatrix& M_in) {
  RMatrix M = M_in;
  const int rows = static_cast<int>(M.rows()), cols = static_cast<int>(M.cols());
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = r;
    while (piv < rows && M(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    M.swap_rows(r, piv);
    Rational d = M(r, c);
    for (int j = 0; j < cols; ++j) M(r, j) /= d;
    for (int i = 0; i < rows; ++i) {
      if (i == r || M(i, c) == 0) continue;
      Rational f = M(i, c);
      for (int j = 0; j < cols; ++j) M(i, j) -= f * M(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::set<int> pivots(pivot_col.begin(), pivot_col.end());
  std::vector<int> free;
  for (int c = 0; c < cols; ++c)
    if (!pivots.count(c)) free.push_back(c);
  RMatrix B = zeros(cols, static_cast<int>(free.size()));
  for (size_t f = 0; f < free.size(); ++f) {
    B(free[f], f) = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) B(pivot_col[i], f) = -M(i, free[f]);
  }
  return B;
}

Rational slice_simplex_integral(const CellForm& form, const std::vector<Rational>& c, const Rational& T, int drop) {
  const int n = form.dim();
  if (static_cast<int>(c.size()) != n || drop < 0 || drop >= n)
    fail(ErrorKind::OddDimension, "slice data does not match the form");
  const int d = n - 1;
  if (d % 2) fail(ErrorKind::OddDimension, "slice dimension " + std::to_string(d) + " is odd");
  RMatrix B = zeros(n, d);
  Rational prod = 1;
  for (int i = 0, col = 0; i < n; ++i) {
    if (i == drop) continue;
    if (c[i] <= 0) fail(ErrorKind::BadMetric, "slice coefficients must be positive");
    B(i, col) = 1;
    B(drop, col) = -c[i] / c[drop];
    prod *= c[i];
    ++col;
  }
  Rational w = wedge_power_top(form, d / 2, B);
  if (w < 0) w = -w;
  Rational vol = 1;
  for (int i = 0; i < d; ++i) vol *= T;
  vol /= Rational(factorial(d)) * prod;
  return w * vol;
}

namespace {

// restriction of a form to a subset of its coordinates
CellForm restrict(const CellForm& f, const std::vector<int>& keep_edges) {
  std::map<int, int> pos;
  for (int i = 0; i < f.dim(); ++i) pos[f.edges[i]] = i;
  CellForm r;
  r.edges = keep_edges;
  const int n = static_cast<int>(keep_edges.size());
  r.A = zeros(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.A(i, j) = f.A(pos.at(keep_edges[i]), pos.at(keep_edges[j]));
  return r;
}

// integral of omega_q^k over the fiber simplex of total perimeter 2 eps of hole q
Rational hole_fiber_integral(const MarkedMetricGraph& g, const std::string& q) {
  auto ho = g.graph.holes();
  int h = hole_of(g, q);
  std::map<int, int> mult;
  for (int s : ho.cycles[h]) ++mult[std::min(s, g.graph.sigma1()[s])];
  std::vector<int> edges;
  std::vector<Rational> c;
  int drop = -1;
  for (const auto& [e, m] : mult) {
    if (m == 1 && drop < 0) drop = static_cast<int>(edges.size());
    edges.push_back(e);
    c.push_back(m);
  }
  if (drop < 0) drop = 0;
  auto f = restrict(omega_on_cell(g, q), edges);
  return slice_simplex_integral(f, c, circumference(g, q), drop);
}

}  // namespace

Rational fiber_integral_disk(int r, const Rational& eps) {
  if (r < 0) fail(ErrorKind::NegativeCount, "r must be >= 0");
  if (eps <= 0) fail(ErrorKind::BadMetric, "epsilon must be positive");
  // polygon of 2r+3 bivalent vertices; q is the inner hole
  const int k = 2 * r + 3;
  Perm s0(2 * k), s1(2 * k);
  for (int i = 0; i < k; ++i) {
    s0[2 * i] = 2 * i + 1;
    s0[2 * i + 1] = 2 * i;
    int a = 2 * i + 1, b = (2 * i + 2) % (2 * k);
    s1[a] = b;
    s1[b] = a;
  }
  MarkedMetricGraph g;
  g.graph = RibbonGraph(std::move(s0), std::move(s1));
  auto ho = g.graph.holes();
  g.marking["q"] = {MarkKind::Hole, ho.cycles[0][0]};
  g.marking["p"] = {MarkKind::Hole, ho.cycles[1][0]};
  g.length.assign(2 * k, 2 * eps / k);
  return hole_fiber_integral(g, "q");
}

namespace {

// Cylinder model: e0 joins w1 on cycle 1 to w2 on cycle 2; cycle c carries legs to
// univalent vertices, with w_c inserted at position a_c of the leg sequence.
MarkedMetricGraph cylinder_model(int v1, int v2, int a1, int a2, const Rational& eps) {
  std::vector<int> s0, s1;
  auto side = [&]() {
    s0.push_back(-1);
    s1.push_back(-1);
    return static_cast<int>(s0.size()) - 1;
  };
  auto pair = [&](int x, int y) {
    s1[x] = y;
    s1[y] = x;
  };
  Marking m;
  std::vector<int> legs_end;
  int e0[2];
  std::vector<int> cycle_edges;
  for (int c = 0; c < 2; ++c) {
    const int v = c == 0 ? v1 : v2;
    const int a = c == 0 ? a1 : a2;
    const int nv = v + 1;
    // per cycle vertex: next, prev, attach sides
    std::vector<int> nxt(nv), prv(nv), att(nv);
    int leg = 0;
    for (int i = 0; i < nv; ++i) {
      nxt[i] = side();
      prv[i] = side();
      att[i] = side();
      bool is_w = i == a;
      // legs point into the cycle's own face, e0 into the shared face
      if (is_w) {
        s0[nxt[i]] = prv[i];
        s0[prv[i]] = att[i];
        s0[att[i]] = nxt[i];
        e0[c] = att[i];
      } else {
        s0[nxt[i]] = att[i];
        s0[att[i]] = prv[i];
        s0[prv[i]] = nxt[i];
        int end = side();
        s0[end] = end;
        pair(att[i], end);
        m[std::string(c == 0 ? "x" : "y") + std::to_string(++leg)] = {MarkKind::Vertex, end};
      }
    }
    for (int i = 0; i < nv; ++i) {
      pair(nxt[i], prv[(i + 1) % nv]);
      cycle_edges.push_back(std::min(nxt[i], prv[(i + 1) % nv]));
    }
  }
  pair(e0[0], e0[1]);
  MarkedMetricGraph g;
  g.graph = RibbonGraph(s0, s1);
  auto ho = g.graph.holes();
  int qh = ho.of[e0[0]];
  if (ho.of[e0[1]] != qh || g.graph.genus() != 0 || ho.size() != 3)
    fail(ErrorKind::InconsistentLabels, "cylinder model is not a genus-0 three-hole graph");
  m["q"] = {MarkKind::Hole, e0[0]};
  int inner = 0;
  for (int h = 0; h < ho.size(); ++h)
    if (h != qh) m["i" + std::to_string(++inner)] = {MarkKind::Hole, ho.cycles[h][0]};
  g.marking = m;
  // q-edges share the perimeter 2 eps evenly; e0 counts twice
  const int q_edges = v1 + v2 + 3;
  Rational L = 2 * eps / (q_edges + 1);
  g.length.assign(g.graph.sides(), Rational(1));
  auto set = [&](int s) { g.length[s] = g.length[g.graph.sigma1()[s]] = L; };
  set(e0[0]);
  for (int e : cycle_edges) set(e);
  return g;
}

}  // namespace

CylinderFiber fiber_integral_cyl(int v1, int v2, const Rational& eps) {
  if (v1 < 1 || v2 < 1) fail(ErrorKind::NegativeCount, "v1 and v2 must be >= 1");
  if ((v1 + v2) % 2) fail(ErrorKind::ParityMismatch, "v1 + v2 must be even");
  if (eps <= 0) fail(ErrorKind::BadMetric, "epsilon must be positive");
  CylinderFiber out;
  out.integral = 0;
  std::set<CanonicalForm> seen;
  // w_c may sit before any leg or after the last one; the two ends are the same gap
  for (int a1 = 0; a1 <= v1; ++a1)
    for (int a2 = 0; a2 <= v2; ++a2) {
      ++out.raw_configurations;
      auto g = cylinder_model(v1, v2, a1, a2, eps);
      auto cf = canonical_form(g.graph, g.marking);
      cf.relabel.clear();
      if (!seen.insert(cf).second) continue;
      Rational val = hole_fiber_integral(g, "q");
      out.per_simplex.push_back(val);
      out.integral += val;
    }
  out.simplices = static_cast<long>(seen.size());
  return out;
}

Nondegeneracy nondegeneracy_check(const MarkedMetricGraph& g) {
  check_metric(g);
  auto vo = g.graph.vertices();
  for (const auto& c : vo.cycles)
    if (c.size() != 3) fail(ErrorKind::NotTopCell, "cell has a vertex of valency " + std::to_string(c.size()));
  for (const auto& [l, t] : g.marking)
    if (t.kind == MarkKind::Vertex) fail(ErrorKind::NotTopCell, "cell has a marked vertex " + l);
  auto f = big_omega(g);
  auto ho = g.graph.holes();
  RMatrix M = zeros(ho.size(), f.dim());
  std::map<int, int> col;
  for (int i = 0; i < f.dim(); ++i) col[f.edges[i]] = i;
  for (int h = 0; h < ho.size(); ++h)
    for (int s : ho.cycles[h]) M(h, col.at(std::min(s, g.graph.sigma1()[s]))) += 1;
  RMatrix B = kernel_basis(M);
  Nondegeneracy r;
  r.slice_dim = static_cast<int>(B.cols());
  if (r.slice_dim % 2) {
    r.pfaffian = 0;
    return r;
  }
  r.pfaffian = r.slice_dim ? pfaffian(B.transpose() * f.A * B) : Rational(1);
  r.nondegenerate = r.pfaffian != 0;
  return r;
}

}  // namespace ribbon
