#include "test_util.hpp"

#include "ribbon/comb.hpp"

using namespace ribbon;

namespace {

TautPoly k(int i, int e = 1) { return TautPoly::kappa(i, e); }
TautPoly W(std::vector<int> args, std::vector<std::pair<std::string, int>> marks = {}) {
  return TautPoly::gen(w_symbol(std::move(args), std::move(marks)));
}
const RhoAssignment one_one{{"q1", 1}, {"q2", 1}};

}  // namespace

TEST_CASE("double factorial") {
  CHECK(double_factorial(5) == 15);
  CHECK(double_factorial(-1) == 1);
  CHECK(double_factorial(1) == 1);
  CHECK(double_factorial(7) == 105);
  CHECK(kind_of([] { double_factorial(4); }) == ErrorKind::EvenInput);
}

TEST_CASE("c_mu") {
  for (int r = 0; r <= 4; ++r) CHECK(c_mu(r, 1) == 1);
  CHECK(c_mu(2, 2) == 7);
  CHECK(c_mu(2, 3) == 63);
  for (int r = 0; r <= 5; ++r) {
    CHECK(c_mu(r, 2) == 2 * r + 3);
    CHECK(c_mu(r, 3) == (2 * r + 3) * (2 * r + 5));
  }
}

TEST_CASE("set partitions") {
  CHECK(set_partitions({"a"}).size() == 1);
  CHECK(set_partitions({"a", "b", "c"}).size() == 5);
  CHECK(set_partitions({"a", "b", "c", "d"}).size() == 15);
  SetPartition M{{"q1", "q2"}, {"q3"}};
  CHECK_FALSE(is_discrete(M));
  CHECK(discrete_on(M, {"q1", "q3"}));
  CHECK_FALSE(discrete_on(M, {"q1", "q2"}));
}

TEST_CASE("c_M") {
  RhoAssignment r3{{"q1", 1}, {"q2", 1}, {"q3", 1}};
  CHECK(c_M(r3, {{"q1"}, {"q2"}, {"q3"}}) == 1);
  CHECK(c_M(one_one, {{"q1", "q2"}}) == 7);
  CHECK(c_M(r3, {{"q1", "q2"}, {"q3"}}) == 7);
}

TEST_CASE("forget multiplicity") {
  Profile m = induced_profile(one_one, std::nullopt);
  CHECK(m.count(1) == 2);
  CHECK(forget_multiplicity(m, {{"q1"}, {"q2"}}, one_one, {}) == 2);
  CHECK(forget_multiplicity(m, {{"q1", "q2"}}, one_one, {}) == 1);
  CHECK(forget_multiplicity(m, {{"q1"}, {"q2"}}, one_one, {"q1", "q2"}) == 1);
  CHECK(kind_of([&] { forget_multiplicity(m, {{"q1", "q2"}}, one_one, {"q1", "q2"}); }) == ErrorKind::BadMarking);
}

TEST_CASE("single-vertex relations") {
  auto t1 = theorem1_relation(1);
  CHECK(t1.coefficient == 12);
  CHECK(t1.psi_form.rhs == Rational(12) * TautPoly::psi("q", 2));
  CHECK(t1.psi_form.lhs == W({}, {{"q", 5}}) + TautPoly::gen(Gen::symbol("N", {1, 1}, {{"q", 0}})));
  REQUIRE(t1.kappa_form);
  CHECK(t1.kappa_form->rhs == Rational(12) * k(1));

  auto t0 = theorem1_relation(0);
  CHECK(t0.psi_form.lhs == W({}, {{"q", 3}}));
  CHECK(t0.psi_form.rhs == Rational(2) * TautPoly::psi("q"));

  auto tm = theorem1_relation(-1);
  CHECK(tm.coefficient == 1);
  CHECK(tm.psi_form.rhs == TautPoly(1));
  CHECK(kind_of([] { theorem1_relation(-2); }) == ErrorKind::NegativeCount);

  // N terms carry (2i+1)(2j+1); (i,j) = (0,1) and (1,0) name the same cylinder
  auto t2 = theorem1_relation(2);
  CHECK(t2.psi_form.lhs.coeff({{Gen::symbol("N", {1, 3}, {{"q", 0}}), 1}}) == 6);
  CHECK(t2.coefficient == 120);
}

TEST_CASE("corollary relations") {
  auto rel = corollary_relation(one_one, {});
  CHECK(rel.lhs == Rational(144) * (k(1, 2) + k(2)));
  CHECK(rel.rhs == Rational(2) * W({5, 5}) + Rational(7) * W({7}));
  CHECK(rel.boundary.is_zero());

  for (int r = 1; r <= 4; ++r) {
    auto single = corollary_relation({{"q", r}}, {});
    Integer c = (Integer(1) << (r + 1)) * double_factorial(2 * r + 1);
    CHECK(single.lhs == Rational(c) * k(r));
    CHECK(single.rhs == W({2 * r + 3}));
  }

  auto kept = corollary_relation(one_one, {"q1", "q2"});
  CHECK(kept.lhs == Rational(144) * TautPoly::psi("q1", 2) * TautPoly::psi("q2", 2));
  CHECK(kept.rhs == W({}, {{"q1", 5}, {"q2", 5}}));
  CHECK(kept.boundary.terms().size() == 1);
  CHECK(kept.boundary.terms().begin()->second == 7);

  CHECK(kind_of([] { corollary_relation({{"q", 0}}, {}); }) == ErrorKind::InconsistentProfile);
}

TEST_CASE("f polynomials") {
  CHECK(f_polynomial(Profile::parse("0,1")) == Rational(12) * k(1));
  CHECK(f_polynomial(Profile::parse("0,3")) == TautPoly::parse("288*k1^3 - 4176*k1*k2 + 20736*k3"));
  CHECK(f_polynomial(Profile::parse("0,1,1")) == Rational(1440) * k(1) * k(2) - Rational(13680) * k(3));
  CHECK(f_polynomial(Profile::parse("0,1")) == f_polynomial_from_rho({{"q", 1}}));
}

TEST_CASE("two-vertex corollary") {
  CHECK(two_vertex_formula(1, 1) == Rational(72) * k(1, 2) - Rational(348) * k(2));
  CHECK(two_vertex_formula(1, 2) == Rational(1440) * k(1) * k(2) - Rational(13680) * k(3));
  // unhalved formula at a = b = 2
  auto full = Rational(2 * 2 * 2 * 2 * 2 * 2 * 15 * 15) * (k(2, 2) + k(4)) - Rational(32 * 10395) * k(4);
  CHECK(two_vertex_formula(2, 2) == full * Rational(1, 2));
  for (int a = 1; a <= 3; ++a)
    for (int b = a; b <= 3; ++b) CHECK(two_vertex_check(a, b).ok);
}

TEST_CASE("leading coefficient") {
  CHECK(leading_coefficient(Profile::parse("0,3")) == 288);
  CHECK(leading_coefficient(Profile::parse("0,1,1")) == 1440);
  auto f = f_polynomial(Profile::parse("0,2,1"));
  CHECK(f.coeff(leading_monomial(Profile::parse("0,2,1"))) == leading_coefficient(Profile::parse("0,2,1")));
  CHECK(f.homogeneous());
}
