#pragma once

#include "ribbon/rational.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ribbon {

// Generator of the formal ring: kappa_i, psi_q, or an opaque class symbol.
struct Gen {
  enum class Kind { Kappa, Psi, Symbol };
  Kind kind = Kind::Kappa;
  int index = 0;                                    // kappa subscript
  std::string label;                                // psi label or symbol name
  std::vector<int> args;                            // symbol valencies
  std::vector<std::pair<std::string, int>> marks;   // symbol marks (label, valency)
  int weight = 0;

  static Gen kappa(int i);
  static Gen psi(const std::string& q);
  // weight defaults to the usual rule for W/Wrt and N symbols
  static Gen symbol(const std::string& name, std::vector<int> args,
                    std::vector<std::pair<std::string, int>> marks = {},
                    std::optional<int> weight = std::nullopt);

  std::string str() const;
  bool operator<(const Gen& o) const;
  bool operator==(const Gen& o) const;
};

int default_symbol_weight(const std::string& name, const std::vector<int>& args,
                          const std::vector<std::pair<std::string, int>>& marks);

using Monomial = std::map<Gen, int>;

int weight(const Monomial& m);

class TautPoly {
public:
  TautPoly() = default;
  explicit TautPoly(const Rational& c);
  static TautPoly gen(const Gen& g, int exp = 1);
  static TautPoly kappa(int i, int exp = 1) { return gen(Gen::kappa(i), exp); }
  static TautPoly psi(const std::string& q, int exp = 1) { return gen(Gen::psi(q), exp); }
  static TautPoly monomial(const Monomial& m, const Rational& c = 1);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Monomial& m) const;
  void add_term(const Monomial& m, const Rational& c);

  TautPoly operator+(const TautPoly& o) const;
  TautPoly operator-(const TautPoly& o) const;
  TautPoly operator-() const;
  TautPoly operator*(const TautPoly& o) const;
  TautPoly operator*(const Rational& c) const;
  TautPoly& operator+=(const TautPoly& o);
  TautPoly& operator-=(const TautPoly& o);
  bool operator==(const TautPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const TautPoly& o) const { return !(*this == o); }

  bool homogeneous() const;
  TautPoly homogeneous_part(int w) const;
  // replace every occurrence of a generator by a polynomial
  TautPoly substitute(const Gen& g, const TautPoly& value) const;
  bool only_kinds(bool kappa, bool psi, bool symbol) const;

  // terms in printing order
  std::vector<std::pair<Monomial, Rational>> ordered() const;
  std::string str() const;
  static TautPoly parse(const std::string& text);
  nlohmann::json to_json() const;
  static TautPoly from_json(const nlohmann::json& j);

private:
  std::map<Monomial, Rational> terms_;
};

TautPoly operator*(const Rational& c, const TautPoly& p);

// sum over permutations of the products over cycles of kappa_{sum of b}
TautPoly kappa_sigma(const std::vector<int>& b);

// push forward a psi polynomial forgetting the labels in Q
TautPoly faber_pushforward(const TautPoly& poly, const std::vector<std::string>& Q);
// string equation for monomials without psi_q
TautPoly string_reduce(const TautPoly& poly, const std::string& q);
// psi_q^1 -> kappa_0, or 2g-2+n when (g,n) is given
TautPoly dilaton_value(const TautPoly& poly, const std::string& q,
                       std::optional<std::pair<int, int>> gn = std::nullopt);
// kappa_b -> kappa_b + psi_q^b
TautPoly pullback_kappa(const TautPoly& poly, const std::string& q);
// one-point pushforward of a polynomial in kappa and psi (push-pull)
TautPoly forget_point(const TautPoly& poly, const std::string& q);

}  // namespace ribbon
