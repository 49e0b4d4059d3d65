#include "ribbon/comb.hpp"

#include "ribbon/error.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

namespace ribbon {

Integer double_factorial(int n) {
  if (n < -1 || n % 2 == 0) fail(ErrorKind::EvenInput, "double factorial needs an odd n >= -1");
  Integer r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

Integer c_mu(int rho_mu, int h) {
  if (h < 1 || rho_mu < -1) fail(ErrorKind::NegativeCount, "c_mu needs h >= 1 and rho >= -1");
  return double_factorial(2 * rho_mu + 2 * h - 1) / double_factorial(2 * rho_mu + 1);
}

namespace {

void partitions_rec(const std::vector<std::string>& labels, size_t k, SetPartition& cur,
                    std::vector<SetPartition>& out) {
  if (k == labels.size()) {
    out.push_back(cur);
    return;
  }
  for (size_t b = 0; b < cur.size(); ++b) {
    cur[b].push_back(labels[k]);
    partitions_rec(labels, k + 1, cur, out);
    cur[b].pop_back();
  }
  cur.push_back({labels[k]});
  partitions_rec(labels, k + 1, cur, out);
  cur.pop_back();
}

}  // namespace

std::vector<SetPartition> set_partitions(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  std::vector<SetPartition> out;
  SetPartition cur;
  partitions_rec(labels, 0, cur, out);
  for (auto& M : out) std::sort(M.begin(), M.end());
  return out;
}

bool is_discrete(const SetPartition& M) {
  return std::all_of(M.begin(), M.end(), [](const auto& b) { return b.size() == 1; });
}

bool discrete_on(const SetPartition& M, const std::vector<std::string>& Qprime) {
  std::set<std::string> keep(Qprime.begin(), Qprime.end());
  for (const auto& b : M) {
    int hits = 0;
    for (const auto& q : b) hits += keep.count(q);
    if (hits > 1) return false;
  }
  return true;
}

int rho_of(const RhoAssignment& rho, const std::vector<std::string>& block) {
  int s = 0;
  for (const auto& q : block) {
    auto it = rho.find(q);
    if (it == rho.end()) fail(ErrorKind::BadMarking, "label " + q + " has no rho value");
    s += it->second;
  }
  return s;
}

Integer c_M(const RhoAssignment& rho, const SetPartition& M) {
  Integer r = 1;
  for (const auto& b : M) r *= c_mu(rho_of(rho, b), static_cast<int>(b.size()));
  return r;
}

namespace {

std::vector<int> rho_counts(const std::vector<int>& values) {
  std::vector<int> m;
  for (int v : values) {
    if (v < 0) fail(ErrorKind::NegativeCount, "rho values must be nonnegative");
    if (static_cast<int>(m.size()) <= v) m.resize(v + 1, 0);
    ++m[v];
  }
  return m;
}

int at(const std::vector<int>& m, int i) { return i < static_cast<int>(m.size()) ? m[i] : 0; }

Integer checked_factorial(int n, const std::string& what) {
  if (n < 0) fail(ErrorKind::NegativeCount, "negative factorial argument in " + what);
  return factorial(n);
}

}  // namespace

Profile profile_of(const Profile& m_star, const RhoAssignment& rho, const SetPartition& M) {
  std::vector<int> vals;
  for (const auto& b : M) vals.push_back(rho_of(rho, b));
  auto cnt = rho_counts(vals);
  Profile out;
  out.m.assign(std::max(cnt.size(), size_t{1}), 0);
  int odd = 0;
  for (size_t i = 1; i < cnt.size(); ++i) {
    out.m[i] = cnt[i];
    odd += (2 * static_cast<int>(i) + 1) * cnt[i];
  }
  out.m[0] = m_star.odd_total() - odd;
  if (out.m[0] < 0) fail(ErrorKind::NegativeCount, "m_0(M) would be negative");
  return out.trimmed();
}

Integer forget_multiplicity(const Profile& m_star, const SetPartition& M, const RhoAssignment& rho,
                            const std::vector<std::string>& Qprime) {
  if (!discrete_on(M, Qprime)) fail(ErrorKind::BadMarking, "partition is not discrete on Q'");
  Profile mM = profile_of(m_star, rho, M);
  std::vector<int> tau, rhoM;
  for (const auto& b : M) {
    int r = rho_of(rho, b);
    rhoM.push_back(r);
    for (const auto& q : Qprime)
      if (std::find(b.begin(), b.end(), q) != b.end()) tau.push_back(r);
  }
  auto mt = rho_counts(tau);
  auto mr = rho_counts(rhoM);
  int top = std::max<int>(mM.m.size(), mt.size());
  Integer num = 1;
  for (int i = 0; i < top; ++i) num *= checked_factorial(mM.count(i) - at(mt, i), "forget multiplicity");
  Integer den = checked_factorial(mM.count(0) - at(mr, 0), "forget multiplicity");
  return num / den;
}

RhoAssignment parse_rho(const std::string& csv, const std::string& prefix) {
  RhoAssignment rho;
  std::stringstream ss(csv);
  std::string tok;
  int k = 0;
  while (std::getline(ss, tok, ',')) {
    int v;
    try {
      size_t used = 0;
      v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad rho entry '" + tok + "'");
    }
    if (v < 0) fail(ErrorKind::NegativeCount, "rho values must be nonnegative");
    rho[prefix + std::to_string(++k)] = v;
  }
  if (rho.empty()) fail(ErrorKind::ParseError, "empty rho list");
  return rho;
}

Profile induced_profile(const RhoAssignment& rho, std::optional<std::pair<int, int>> gn) {
  std::vector<int> vals;
  for (const auto& [q, r] : rho) vals.push_back(r);
  auto cnt = rho_counts(vals);
  Profile p;
  p.m.assign(std::max(cnt.size(), size_t{1}), 0);
  for (size_t i = 1; i < cnt.size(); ++i) p.m[i] = cnt[i];
  if (gn) {
    int odd = p.odd_total();
    int m0 = 4 * gn->first - 4 + 2 * gn->second - odd;
    if (gn->first < 0 || gn->second < 1 || 2 * gn->first - 2 + gn->second <= 0 || m0 < at(cnt, 0))
      fail(ErrorKind::InconsistentProfile, "rho does not fit (g, n) = (" + std::to_string(gn->first) + ", " +
                                               std::to_string(gn->second) + ")");
    p.m[0] = m0;
  } else if (at(cnt, 0) > 0) {
    fail(ErrorKind::InconsistentProfile, "rho values equal to 0 need (g, n) to fix m_0");
  }
  return p;
}

std::string Relation::str() const {
  std::string s = lhs.str() + " = " + rhs.str();
  if (!boundary.is_zero()) s += "   [boundary: " + boundary.str() + "]";
  return s;
}

Gen w_symbol(std::vector<int> args, std::vector<std::pair<std::string, int>> marks) {
  return Gen::symbol("W", std::move(args), std::move(marks));
}

Theorem1 theorem1_relation(int r) {
  if (r < -1) fail(ErrorKind::NegativeCount, "single-vertex relation needs r >= -1");
  Theorem1 t;
  t.coefficient = factorial(2 * r + 2) / factorial(r + 1);
  Integer alt = Integer(1) << (r + 1);
  alt *= double_factorial(2 * r + 1);
  if (alt != t.coefficient) fail(ErrorKind::InconsistentProfile, "coefficient identity failed");
  const std::string q = "q";
  t.psi_form.lhs = TautPoly::gen(w_symbol({}, {{q, 2 * r + 3}}));
  for (int i = 0; i <= r - 1; ++i) {
    int j = r - 1 - i;
    t.psi_form.lhs += TautPoly::gen(Gen::symbol("N", {2 * i + 1, 2 * j + 1}, {{q, 0}})) *
                      Rational((2 * i + 1) * (2 * j + 1));
  }
  t.psi_form.rhs = TautPoly::psi(q, r + 1) * Rational(t.coefficient);
  if (r >= 1) {
    Relation k;
    k.lhs = TautPoly::gen(w_symbol({2 * r + 3}));
    for (int i = 0; i <= r - 1; ++i) {
      int j = r - 1 - i;
      k.lhs += TautPoly::gen(Gen::symbol("N", {2 * i + 1, 2 * j + 1})) * Rational((2 * i + 1) * (2 * j + 1));
    }
    k.rhs = TautPoly::kappa(r) * Rational(t.coefficient);
    t.kappa_form = k;
  }
  return t;
}

Relation corollary_relation(const RhoAssignment& rho, const std::vector<std::string>& Qprime,
                            std::optional<std::pair<int, int>> gn) {
  if (rho.empty()) fail(ErrorKind::BadMarking, "empty Q");
  for (const auto& q : Qprime)
    if (!rho.count(q)) fail(ErrorKind::BadMarking, "kept label " + q + " is not in Q");
  std::set<std::string> keep(Qprime.begin(), Qprime.end());
  Profile m_star = induced_profile(rho, gn);

  Relation rel;
  Integer scale = 1;
  std::vector<int> forgotten;
  TautPoly psis(1);
  for (const auto& [q, r] : rho) {
    Integer f = Integer(1) << (r + 1);
    scale *= f * double_factorial(2 * r + 1);
    if (keep.count(q)) psis = psis * TautPoly::psi(q, r + 1);
    else forgotten.push_back(r);
  }
  rel.lhs = psis * kappa_sigma(forgotten) * Rational(scale);

  std::vector<std::string> Q;
  for (const auto& [q, r] : rho) Q.push_back(q);
  for (const auto& M : set_partitions(Q)) {
    Integer cm = c_M(rho, M);
    if (!discrete_on(M, Qprime)) {
      std::vector<std::pair<std::string, int>> marks;
      for (const auto& b : M) {
        std::string lab;
        for (const auto& q : b) lab += (lab.empty() ? "" : "+") + q;
        marks.emplace_back(lab, 2 * rho_of(rho, b) + 3);
      }
      rel.boundary += TautPoly::gen(Gen::symbol("Wrt", {}, marks)) * Rational(cm);
      continue;
    }
    std::vector<int> args;
    std::vector<std::pair<std::string, int>> marks;
    for (const auto& b : M) {
      int rm = rho_of(rho, b);
      auto hit = std::find_if(b.begin(), b.end(), [&](const std::string& q) { return keep.count(q) > 0; });
      if (hit != b.end()) marks.emplace_back(*hit, 2 * rm + 3);
      else if (rm > 0) args.push_back(2 * rm + 3);
    }
    Integer mult = forget_multiplicity(m_star, M, rho, Qprime);
    rel.rhs += TautPoly::gen(w_symbol(args, marks)) * Rational(mult * cm);
  }
  return rel;
}

namespace {

Profile profile_from_valencies(const std::vector<int>& vals) {
  Profile p;
  p.m.assign(1, 0);
  for (int v : vals) {
    int i = (v - 3) / 2;
    if (static_cast<int>(p.m.size()) <= i) p.m.resize(i + 1, 0);
    ++p.m[i];
  }
  return p;
}

std::mutex memo_mu;
std::map<std::vector<int>, TautPoly> memo;

// key: the i >= 1 part of the profile
std::vector<int> key_of(const Profile& p) {
  std::vector<int> k(p.trimmed().m);
  if (!k.empty()) k[0] = 0;
  while (!k.empty() && k.back() == 0) k.pop_back();
  return k;
}

TautPoly solve(const RhoAssignment& rho) {
  Relation rel = corollary_relation(rho, {});
  std::vector<int> target;
  for (const auto& [q, r] : rho) target.push_back(2 * r + 3);
  Gen tg = w_symbol(target);
  TautPoly known = rel.lhs;
  Rational lead = 0;
  for (const auto& [m, c] : rel.rhs.terms()) {
    const Gen& g = m.begin()->first;
    if (g == tg) {
      lead = c;
      continue;
    }
    known -= f_polynomial(profile_from_valencies(g.args)) * c;
  }
  return known * (Rational(1) / lead);
}

}  // namespace

TautPoly f_polynomial(const Profile& m_star, std::optional<std::pair<int, int>> gn) {
  for (int v : m_star.m)
    if (v < 0) fail(ErrorKind::InconsistentProfile, "negative vertex count");
  if (gn) {
    int odd = 0;
    for (size_t i = 1; i < m_star.m.size(); ++i) odd += (2 * static_cast<int>(i) + 1) * m_star.m[i];
    int m0 = 4 * gn->first - 4 + 2 * gn->second - odd;
    if (gn->first < 0 || gn->second < 1 || 2 * gn->first - 2 + gn->second <= 0 || m0 < 0 ||
        (m_star.count(0) != 0 && m_star.count(0) != m0))
      fail(ErrorKind::InconsistentProfile, "profile " + m_star.str() + " does not fit (g, n)");
  }
  auto key = key_of(m_star);
  if (key.empty()) return TautPoly(1);
  {
    std::lock_guard<std::mutex> lock(memo_mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  RhoAssignment rho;
  int k = 0;
  for (size_t i = 1; i < key.size(); ++i)
    for (int c = 0; c < key[i]; ++c) rho["q" + std::to_string(++k)] = static_cast<int>(i);
  TautPoly f = solve(rho);
  std::lock_guard<std::mutex> lock(memo_mu);
  memo.emplace(key, f);
  return f;
}

TautPoly f_polynomial_from_rho(const RhoAssignment& rho) {
  for (const auto& [q, r] : rho)
    if (r < 1) fail(ErrorKind::InconsistentProfile, "each labeled vertex must be non-trivalent");
  return solve(rho);
}

Rational leading_coefficient(const Profile& m_star) {
  Rational c = 1;
  for (size_t i = 1; i < m_star.m.size(); ++i) {
    Integer base = (Integer(1) << (i + 1)) * double_factorial(2 * static_cast<int>(i) + 1);
    Integer p = 1;
    for (int k = 0; k < m_star.m[i]; ++k) p *= base;
    c *= Rational(p, factorial(m_star.m[i]));
  }
  return c;
}

Monomial leading_monomial(const Profile& m_star) {
  Monomial m;
  for (size_t i = 1; i < m_star.m.size(); ++i)
    if (m_star.m[i] > 0) m[Gen::kappa(static_cast<int>(i))] = m_star.m[i];
  return m;
}

TautPoly two_vertex_formula(int a, int b) {
  if (a < 1 || b < 1) fail(ErrorKind::NegativeCount, "two-vertex formula needs a, b >= 1");
  Integer t1 = (Integer(1) << (a + b + 2)) * double_factorial(2 * a + 1) * double_factorial(2 * b + 1);
  Integer t2 = (Integer(1) << (a + b + 1)) * double_factorial(2 * a + 2 * b + 3);
  TautPoly v = (TautPoly::kappa(a) * TautPoly::kappa(b) + TautPoly::kappa(a + b)) * Rational(t1) -
               TautPoly::kappa(a + b) * Rational(t2);
  return a == b ? v * Rational(1, 2) : v;
}

TwoVertexVerdict two_vertex_check(int a, int b) {
  TwoVertexVerdict v;
  v.expected = two_vertex_formula(a, b);
  v.computed = f_polynomial(profile_from_valencies({2 * a + 3, 2 * b + 3}));
  v.ok = v.computed == v.expected;
  return v;
}

}  // namespace ribbon
