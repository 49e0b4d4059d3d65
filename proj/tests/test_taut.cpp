#include "test_util.hpp"

#include "ribbon/taut.hpp"

#include <random>

using namespace ribbon;

namespace {

TautPoly k(int i, int e = 1) { return TautPoly::kappa(i, e); }
TautPoly psi(const std::string& q, int e = 1) { return TautPoly::psi(q, e); }

TautPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-5, 5), idx(0, 3), exp(0, 2);
  TautPoly p;
  for (int t = 0; t < 3; ++t) {
    TautPoly m(Rational(coef(rng), 1 + idx(rng)));
    m = m * k(1 + idx(rng), exp(rng)) * psi(idx(rng) % 2 ? "p1" : "p2", exp(rng));
    p += m;
  }
  return p;
}

}  // namespace

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(11);
  for (int t = 0; t < 30; ++t) {
    auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    auto ab = a * b;
    for (const auto& [m, coef] : ab.terms()) CHECK(coef != 0);
  }
}

TEST_CASE("weights and homogeneous parts") {
  auto p = k(1, 2) + k(2) * psi("p1") + Rational(3) * k(1);
  CHECK_FALSE(p.homogeneous());
  CHECK(p.homogeneous_part(2) == k(1, 2));
  CHECK(p.homogeneous_part(3) == k(2) * psi("p1"));
  CHECK(p.homogeneous_part(1) == Rational(3) * k(1));
  CHECK(k(0).homogeneous());
}

TEST_CASE("text and json round trip") {
  auto p = TautPoly::parse("288*k1^3 - 4176*k1*k2 + 20736*k3");
  CHECK(p == Rational(288) * k(1, 3) - Rational(4176) * k(1) * k(2) + Rational(20736) * k(3));
  CHECK(p.str() == "288*k1^3 - 4176*k1*k2 + 20736*k3");
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    auto q = random_poly(rng);
    CHECK(TautPoly::parse(q.str()) == q);
    CHECK(TautPoly::from_json(q.to_json()) == q);
  }
  CHECK(kind_of([] { TautPoly::parse("3*k1 +"); }) == ErrorKind::ParseError);
}

TEST_CASE("Faber pushforward") {
  for (int b = 0; b <= 6; ++b) CHECK(faber_pushforward(psi("q", b + 1), {"q"}) == k(b));
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      CHECK(faber_pushforward(psi("q1", a + 1) * psi("q2", b + 1), {"q1", "q2"}) == k(a) * k(b) + k(a + b));
  auto three = psi("q1", 2) * psi("q2", 2) * psi("q3", 2);
  CHECK(faber_pushforward(three, {"q1", "q2", "q3"}) == k(1, 3) + Rational(3) * k(1) * k(2) + Rational(2) * k(3));
  // p-factors ride along
  CHECK(faber_pushforward(psi("p", 2) * psi("q", 3), {"q"}) == psi("p", 2) * k(2));
  CHECK(kind_of([] { faber_pushforward(TautPoly(1), {"q"}); }) == ErrorKind::UnforgettableMonomial);
  CHECK(kind_of([] { faber_pushforward(k(1), {"q"}); }) == ErrorKind::UnforgettableMonomial);
}

TEST_CASE("Faber pushforward lowers weight by the number of points") {
  auto p = psi("p", 1) * psi("q1", 3) * psi("q2", 2);
  auto out = faber_pushforward(p, {"q1", "q2"});
  CHECK(out.homogeneous());
  for (const auto& [m, c] : out.terms()) CHECK(weight(m) == 6 - 2);
}

TEST_CASE("kappa_sigma is symmetric") {
  CHECK(kappa_sigma({1, 2, 2}) == kappa_sigma({2, 1, 2}));
  CHECK(kappa_sigma({1, 2, 3}) == kappa_sigma({3, 2, 1}));
  CHECK(kappa_sigma({}) == TautPoly(1));
}

TEST_CASE("string equation") {
  CHECK(string_reduce(psi("p1", 2) * psi("p2"), "q") == psi("p1") * psi("p2") + psi("p1", 2));
  CHECK(string_reduce(psi("p1"), "q") == TautPoly(1));
  CHECK(kind_of([] { string_reduce(TautPoly(1), "q"); }) == ErrorKind::NotReducible);
}

TEST_CASE("dilaton equation") {
  CHECK(dilaton_value(psi("q"), "q", std::make_pair(1, 1)) == TautPoly(1));
  CHECK(dilaton_value(psi("q"), "q", std::make_pair(2, 3)) == TautPoly(5));
  CHECK(dilaton_value(psi("p") * psi("q"), "q") == psi("p") * k(0));
  CHECK(kind_of([] { dilaton_value(psi("q", 2), "q"); }) == ErrorKind::WrongExponent);
}

TEST_CASE("kappa pullback") {
  CHECK(pullback_kappa(k(1), "q") == k(1) + psi("q"));
  CHECK(pullback_kappa(k(1, 2), "q") == k(1, 2) + Rational(2) * k(1) * psi("q") + psi("q", 2));
  CHECK(pullback_kappa(TautPoly(1), "q") == TautPoly(1));
  auto p = k(2) * k(3);
  auto pulled = pullback_kappa(p, "q");
  for (const auto& [m, c] : pulled.terms()) CHECK(weight(m) == 5);
}

TEST_CASE("forgetting two points at once equals forgetting them one by one") {
  // all psi monomials of weight <= 5 with both forgotten exponents positive
  int checked = 0;
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; a + b <= 5; ++b)
      for (int r = 0; a + b + r <= 5; ++r) {
        auto m = psi("q1", a) * psi("q2", b) * psi("p", r);
        auto together = faber_pushforward(m, {"q1", "q2"});
        auto stepwise = forget_point(faber_pushforward(m, {"q2"}), "q1");
        CHECK(together == stepwise);
        ++checked;
      }
  CHECK(checked == 20);
}
