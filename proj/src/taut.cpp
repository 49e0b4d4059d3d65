#include "ribbon/taut.hpp"

#include "ribbon/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace ribbon {

int default_symbol_weight(const std::string& name, const std::vector<int>& args,
                          const std::vector<std::pair<std::string, int>>& marks) {
  int w = 0;
  if (name == "W" || name == "Wrt") {
    for (int a : args) w += (a - 3) / 2;
    for (const auto& [l, v] : marks) w += (v - 1) / 2;
    // a rational-tail mark "q1+q2" carries one extra degree per merged label
    if (name == "Wrt")
      for (const auto& [l, v] : marks) w += static_cast<int>(std::count(l.begin(), l.end(), '+'));
  } else if (name == "N") {
    w = std::accumulate(args.begin(), args.end(), 0) / 2 + static_cast<int>(marks.size());
  }
  return w;
}

Gen Gen::kappa(int i) {
  Gen g;
  g.kind = Kind::Kappa;
  g.index = i;
  g.weight = i;
  return g;
}

Gen Gen::psi(const std::string& q) {
  Gen g;
  g.kind = Kind::Psi;
  g.label = q;
  g.weight = 1;
  return g;
}

Gen Gen::symbol(const std::string& name, std::vector<int> args,
                std::vector<std::pair<std::string, int>> marks, std::optional<int> weight) {
  Gen g;
  g.kind = Kind::Symbol;
  g.label = name;
  std::sort(args.begin(), args.end());
  std::sort(marks.begin(), marks.end());
  g.args = std::move(args);
  g.marks = std::move(marks);
  g.weight = weight ? *weight : default_symbol_weight(g.label, g.args, g.marks);
  return g;
}

bool Gen::operator<(const Gen& o) const {
  if (kind != o.kind) return kind < o.kind;
  switch (kind) {
    case Kind::Kappa: return index < o.index;
    case Kind::Psi: return label < o.label;
    case Kind::Symbol:
      return std::tie(label, args, marks, weight) < std::tie(o.label, o.args, o.marks, o.weight);
  }
  return false;
}

bool Gen::operator==(const Gen& o) const { return !(*this < o) && !(o < *this); }

std::string Gen::str() const {
  switch (kind) {
    case Kind::Kappa: return "k" + std::to_string(index);
    case Kind::Psi: return "psi[" + label + "]";
    case Kind::Symbol: {
      std::string s = label + "[";
      for (size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + std::to_string(args[i]);
      if (!marks.empty()) {
        s += ";";
        for (size_t i = 0; i < marks.size(); ++i) {
          s += (i ? "," : "") + marks[i].first;
          if (marks[i].second) s += "=" + std::to_string(marks[i].second);
        }
      }
      s += "]";
      if (weight != default_symbol_weight(label, args, marks)) s += ":" + std::to_string(weight);
      return s;
    }
  }
  return "?";
}

int weight(const Monomial& m) {
  int w = 0;
  for (const auto& [g, e] : m) w += g.weight * e;
  return w;
}

TautPoly::TautPoly(const Rational& c) {
  if (c != 0) terms_[Monomial{}] = c;
}

TautPoly TautPoly::gen(const Gen& g, int exp) {
  Monomial m;
  if (exp > 0) m[g] = exp;
  return monomial(m);
}

TautPoly TautPoly::monomial(const Monomial& m, const Rational& c) {
  TautPoly p;
  p.add_term(m, c);
  return p;
}

Rational TautPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TautPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TautPoly TautPoly::operator+(const TautPoly& o) const {
  TautPoly r = *this;
  r += o;
  return r;
}

TautPoly TautPoly::operator-(const TautPoly& o) const {
  TautPoly r = *this;
  r -= o;
  return r;
}

TautPoly TautPoly::operator-() const { return *this * Rational(-1); }

TautPoly& TautPoly::operator+=(const TautPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

TautPoly& TautPoly::operator-=(const TautPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

namespace {

Monomial mul(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (const auto& [g, e] : b) r[g] += e;
  return r;
}

}  // namespace

TautPoly TautPoly::operator*(const TautPoly& o) const {
  TautPoly r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(mul(m1, m2), c1 * c2);
  return r;
}

TautPoly TautPoly::operator*(const Rational& c) const {
  TautPoly r;
  if (c == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
  return r;
}

TautPoly operator*(const Rational& c, const TautPoly& p) { return p * c; }

bool TautPoly::homogeneous() const {
  std::set<int> ws;
  for (const auto& [m, c] : terms_) ws.insert(weight(m));
  return ws.size() <= 1;
}

TautPoly TautPoly::homogeneous_part(int w) const {
  TautPoly r;
  for (const auto& [m, c] : terms_)
    if (weight(m) == w) r.terms_[m] = c;
  return r;
}

TautPoly TautPoly::substitute(const Gen& g, const TautPoly& value) const {
  TautPoly r;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    int e = 0;
    if (auto it = rest.find(g); it != rest.end()) {
      e = it->second;
      rest.erase(it);
    }
    TautPoly t = monomial(rest, c);
    for (int k = 0; k < e; ++k) t = t * value;
    r += t;
  }
  return r;
}

bool TautPoly::only_kinds(bool kappa, bool psi, bool symbol) const {
  for (const auto& [m, c] : terms_)
    for (const auto& [g, e] : m) {
      if (g.kind == Gen::Kind::Kappa && !kappa) return false;
      if (g.kind == Gen::Kind::Psi && !psi) return false;
      if (g.kind == Gen::Kind::Symbol && !symbol) return false;
    }
  return true;
}

std::vector<std::pair<Monomial, Rational>> TautPoly::ordered() const {
  std::vector<std::pair<Monomial, Rational>> v(terms_.begin(), terms_.end());
  // graded, then lexicographic with larger exponents of earlier generators first
  auto before = [](const Monomial& a, const Monomial& b) {
    int wa = weight(a), wb = weight(b);
    if (wa != wb) return wa > wb;
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
      if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) return true;
      if (ia == a.end() || ib->first < ia->first) return false;
      if (ia->second != ib->second) return ia->second > ib->second;
      ++ia;
      ++ib;
    }
    return false;
  };
  std::sort(v.begin(), v.end(), [&](const auto& x, const auto& y) { return before(x.first, y.first); });
  return v;
}

std::string TautPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : ordered()) {
    Rational a = c < 0 ? Rational(-c) : c;
    if (first) s += c < 0 ? "-" : "";
    else s += c < 0 ? " - " : " + ";
    first = false;
    std::string body;
    for (const auto& [g, e] : m) {
      if (!body.empty()) body += "*";
      body += g.str();
      if (e > 1) body += "^" + std::to_string(e);
    }
    if (body.empty()) s += to_string(a);
    else if (a == 1) s += body;
    else s += to_string(a) + "*" + body;
  }
  return s;
}

namespace {

class Parser {
public:
  explicit Parser(const std::string& t) : t_(t) {}

  TautPoly poly() {
    TautPoly p;
    skip();
    if (peek() == '0' && rest_is_zero()) return p;
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++i_;
    } else if (peek() == '+') {
      ++i_;
    }
    for (;;) {
      auto [m, c] = term();
      p.add_term(m, c * sign);
      skip();
      if (i_ >= t_.size()) break;
      char op = t_[i_++];
      if (op == '+') sign = 1;
      else if (op == '-') sign = -1;
      else error("expected + or -");
    }
    return p;
  }

private:
  bool rest_is_zero() {
    size_t j = i_ + 1;
    while (j < t_.size() && std::isspace(static_cast<unsigned char>(t_[j]))) ++j;
    if (j == t_.size()) {
      i_ = j;
      return true;
    }
    return false;
  }

  char peek() const { return i_ < t_.size() ? t_[i_] : '\0'; }
  void skip() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
  }
  [[noreturn]] void error(const std::string& what) {
    fail(ErrorKind::ParseError, what + " at position " + std::to_string(i_) + " in '" + t_ + "'");
  }

  int integer() {
    skip();
    size_t s = i_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
    if (s == i_) error("expected a number");
    return std::stoi(t_.substr(s, i_ - s));
  }

  std::pair<Monomial, Rational> term() {
    skip();
    Rational c = 1;
    Monomial m;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      size_t s = i_;
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/') ++i_;
      c = parse_rational(t_.substr(s, i_ - s));
      skip();
      if (peek() != '*') return {m, c};
      ++i_;
    }
    for (;;) {
      Gen g = factor();
      int e = 1;
      skip();
      if (peek() == '^') {
        ++i_;
        e = integer();
      }
      m[g] += e;
      skip();
      if (peek() != '*') break;
      ++i_;
    }
    return {m, c};
  }

  std::string name() {
    skip();
    size_t s = i_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '+' ||
           peek() == '~' || peek() == '.')
      ++i_;
    if (s == i_) error("expected a name");
    return t_.substr(s, i_ - s);
  }

  Gen factor() {
    skip();
    if (peek() == 'k' && i_ + 1 < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_ + 1]))) {
      ++i_;
      return Gen::kappa(integer());
    }
    if (t_.compare(i_, 4, "psi[") == 0) {
      i_ += 4;
      size_t s = i_;
      while (i_ < t_.size() && t_[i_] != ']') ++i_;
      if (i_ >= t_.size()) error("unterminated psi label");
      std::string q = t_.substr(s, i_ - s);
      ++i_;
      return Gen::psi(q);
    }
    if (std::isupper(static_cast<unsigned char>(peek()))) {
      size_t s = i_;
      while (std::isalpha(static_cast<unsigned char>(peek()))) ++i_;
      std::string nm = t_.substr(s, i_ - s);
      if (peek() != '[') error("expected [ after symbol name");
      ++i_;
      std::vector<int> args;
      std::vector<std::pair<std::string, int>> marks;
      skip();
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        args.push_back(integer());
        skip();
        if (peek() == ',') ++i_;
        skip();
      }
      if (peek() == ';') {
        ++i_;
        for (;;) {
          std::string l = name();
          int v = 0;
          if (peek() == '=') {
            ++i_;
            v = integer();
          }
          marks.emplace_back(l, v);
          skip();
          if (peek() != ',') break;
          ++i_;
        }
      }
      skip();
      if (peek() != ']') error("expected ]");
      ++i_;
      std::optional<int> w;
      if (peek() == ':') {
        ++i_;
        bool neg = peek() == '-';
        if (neg) ++i_;
        w = integer() * (neg ? -1 : 1);
      }
      return Gen::symbol(nm, args, marks, w);
    }
    error("unknown generator");
  }

  const std::string& t_;
  size_t i_ = 0;
};

}  // namespace

TautPoly TautPoly::parse(const std::string& text) { return Parser(text).poly(); }

nlohmann::json TautPoly::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : ordered()) {
    nlohmann::json mono = nlohmann::json::array();
    for (const auto& [g, e] : m) mono.push_back({{"gen", g.str()}, {"exp", e}});
    terms.push_back({{"coeff", to_string(c)}, {"mono", mono}});
  }
  return {{"terms", terms}};
}

TautPoly TautPoly::from_json(const nlohmann::json& j) {
  TautPoly p;
  try {
    for (const auto& t : j.at("terms")) {
      Monomial m;
      for (const auto& jg : t.at("mono")) {
        TautPoly one = parse(jg.at("gen").get<std::string>());
        if (one.terms().size() != 1 || one.terms().begin()->first.size() != 1)
          fail(ErrorKind::ParseError, "not a single generator: " + jg.at("gen").get<std::string>());
        m[one.terms().begin()->first.begin()->first] += jg.at("exp").get<int>();
      }
      p.add_term(m, parse_rational(t.at("coeff").get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("polynomial JSON: ") + e.what());
  }
  return p;
}

TautPoly kappa_sigma(const std::vector<int>& b) {
  const int m = static_cast<int>(b.size());
  TautPoly out;
  std::vector<int> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    Monomial mono;
    std::vector<char> seen(m, 0);
    for (int s = 0; s < m; ++s) {
      if (seen[s]) continue;
      int sum = 0;
      for (int x = s; !seen[x]; x = sigma[x]) {
        seen[x] = 1;
        sum += b[x];
      }
      mono[Gen::kappa(sum)] += 1;
    }
    out.add_term(mono, 1);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

namespace {

// psi exponent of q in m (0 when absent) and the monomial without it
std::pair<int, Monomial> split_psi(const Monomial& m, const std::string& q) {
  Monomial rest = m;
  int e = 0;
  if (auto it = rest.find(Gen::psi(q)); it != rest.end()) {
    e = it->second;
    rest.erase(it);
  }
  return {e, rest};
}

// string equation on a single monomial not containing psi_q
TautPoly string_monomial(const Monomial& m, const Rational& c) {
  TautPoly out;
  bool any = false;
  for (const auto& [g, e] : m) {
    if (g.kind != Gen::Kind::Psi) continue;
    any = true;
    Monomial lowered = m;
    if (--lowered[g] == 0) lowered.erase(g);
    out.add_term(lowered, c);
  }
  if (!any) fail(ErrorKind::NotReducible, "string equation needs a positive psi exponent");
  return out;
}

TautPoly push_psi_monomial(const Monomial& m, const Rational& c, std::vector<std::string> Q) {
  for (size_t k = 0; k < Q.size(); ++k) {
    auto [e, rest] = split_psi(m, Q[k]);
    if (e > 0) continue;
    std::string q0 = Q[k];
    Q.erase(Q.begin() + static_cast<long>(k));
    TautPoly once;
    try {
      once = string_monomial(m, c);
    } catch (const Error&) {
      fail(ErrorKind::UnforgettableMonomial, "psi_" + q0 + " has exponent 0 and nothing to lower");
    }
    TautPoly out;
    for (const auto& [m2, c2] : once.terms()) out += push_psi_monomial(m2, c2, Q);
    return out;
  }
  Monomial rest = m;
  std::vector<int> b;
  for (const auto& q : Q) {
    auto [e, r] = split_psi(rest, q);
    b.push_back(e - 1);
    rest = r;
  }
  return TautPoly::monomial(rest, c) * kappa_sigma(b);
}

}  // namespace

TautPoly faber_pushforward(const TautPoly& poly, const std::vector<std::string>& Q) {
  if (!poly.only_kinds(false, true, false))
    fail(ErrorKind::UnforgettableMonomial, "pushforward takes a polynomial in psi classes only");
  std::set<std::string> uniq(Q.begin(), Q.end());
  if (uniq.size() != Q.size()) fail(ErrorKind::BadMarking, "repeated label in the forgotten set");
  TautPoly out;
  for (const auto& [m, c] : poly.terms()) out += push_psi_monomial(m, c, Q);
  return out;
}

TautPoly string_reduce(const TautPoly& poly, const std::string& q) {
  TautPoly out;
  for (const auto& [m, c] : poly.terms()) {
    if (split_psi(m, q).first != 0)
      fail(ErrorKind::NotReducible, "psi_" + q + " occurs; the string equation does not apply");
    out += string_monomial(m, c);
  }
  return out;
}

TautPoly dilaton_value(const TautPoly& poly, const std::string& q, std::optional<std::pair<int, int>> gn) {
  TautPoly out;
  for (const auto& [m, c] : poly.terms()) {
    auto [e, rest] = split_psi(m, q);
    if (e != 1) fail(ErrorKind::WrongExponent, "dilaton needs psi_" + q + " to the first power");
    if (gn) out.add_term(rest, c * (2 * gn->first - 2 + gn->second));
    else out += TautPoly::monomial(rest, c) * TautPoly::kappa(0);
  }
  return out;
}

TautPoly pullback_kappa(const TautPoly& poly, const std::string& q) {
  TautPoly out;
  for (const auto& [m, c] : poly.terms()) {
    TautPoly t(c);
    for (const auto& [g, e] : m) {
      TautPoly f = TautPoly::gen(g);
      if (g.kind == Gen::Kind::Kappa) f = f + TautPoly::psi(q, g.index);
      for (int k = 0; k < e; ++k) t = t * f;
    }
    out += t;
  }
  return out;
}

TautPoly forget_point(const TautPoly& poly, const std::string& q) {
  if (!poly.only_kinds(true, true, false))
    fail(ErrorKind::UnforgettableMonomial, "cannot push class symbols forward");
  TautPoly out;
  for (const auto& [m, c] : poly.terms()) {
    // separate the kappa part and rewrite it as pulled-back kappa plus psi_q powers
    Monomial kap, rest;
    for (const auto& [g, e] : m) (g.kind == Gen::Kind::Kappa ? kap : rest)[g] = e;
    TautPoly expanded = pullback_kappa(TautPoly::monomial(kap, c), q) * TautPoly::monomial(rest);
    for (const auto& [m2, c2] : expanded.terms()) {
      auto [e, others] = split_psi(m2, q);
      if (e >= 1) {
        out += TautPoly::monomial(others, c2) * TautPoly::kappa(e - 1);
        continue;
      }
      Monomial psis, kappas;
      for (const auto& [g, x] : others) (g.kind == Gen::Kind::Psi ? psis : kappas)[g] = x;
      if (psis.empty())
        fail(ErrorKind::UnforgettableMonomial, "pushforward of a class pulled back from the base");
      out += TautPoly::monomial(kappas) * string_monomial(psis, c2);
    }
  }
  return out;
}

}  // namespace ribbon
