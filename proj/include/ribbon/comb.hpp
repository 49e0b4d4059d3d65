#pragma once

#include "ribbon/enumerate.hpp"
#include "ribbon/rational.hpp"
#include "ribbon/taut.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ribbon {

// rho(q) >= 0: q marks a vertex of valency 2 rho(q) + 3
using RhoAssignment = std::map<std::string, int>;
// blocks sorted, each block sorted
using SetPartition = std::vector<std::vector<std::string>>;

Integer double_factorial(int n);
// (2 rho + 2h - 1)!! / (2 rho + 1)!!
Integer c_mu(int rho_mu, int h);

std::vector<SetPartition> set_partitions(std::vector<std::string> labels);
bool is_discrete(const SetPartition& M);
// every block meets Qprime in at most one label
bool discrete_on(const SetPartition& M, const std::vector<std::string>& Qprime);
int rho_of(const RhoAssignment& rho, const std::vector<std::string>& block);

Integer c_M(const RhoAssignment& rho, const SetPartition& M);

// m_*(M): i >= 1 entries from rho|_M, m_0 fixed by keeping sum (2i+1) m_i
Profile profile_of(const Profile& m_star, const RhoAssignment& rho, const SetPartition& M);

// prod_i (m_i(M) - m_i^tau)! / (m_0(M) - m_0^{rho|M})!
Integer forget_multiplicity(const Profile& m_star, const SetPartition& M, const RhoAssignment& rho,
                            const std::vector<std::string>& Qprime);

RhoAssignment parse_rho(const std::string& csv, const std::string& prefix = "q");
// profile with m_i = |rho^-1(i)| for i >= 1 and m_0 chosen from (g, n) when given
Profile induced_profile(const RhoAssignment& rho, std::optional<std::pair<int, int>> gn);

struct Relation {
  TautPoly lhs;
  TautPoly rhs;
  TautPoly boundary;  // terms dropped modulo the boundary
  std::string str() const;
};

// W symbol for unmarked valencies `args` and marked vertices `marks`
Gen w_symbol(std::vector<int> args, std::vector<std::pair<std::string, int>> marks = {});

struct Theorem1 {
  Relation psi_form;
  std::optional<Relation> kappa_form;  // r >= 1
  Integer coefficient;                 // (2r+2)!/(r+1)!
};

Theorem1 theorem1_relation(int r);

// (g, n) with n = |P| is needed only when some rho value is 0
Relation corollary_relation(const RhoAssignment& rho, const std::vector<std::string>& Qprime,
                            std::optional<std::pair<int, int>> gn = std::nullopt);

// Solve the Q' = empty relation for W_{m_*} in kappa classes.
TautPoly f_polynomial(const Profile& m_star, std::optional<std::pair<int, int>> gn = std::nullopt);
// same, with an explicit labeling of the non-trivalent vertices
TautPoly f_polynomial_from_rho(const RhoAssignment& rho);

// prod (2^{i+1} (2i+1)!!)^{m_i} / m_i!
Rational leading_coefficient(const Profile& m_star);
Monomial leading_monomial(const Profile& m_star);

struct TwoVertexVerdict {
  bool ok = false;
  TautPoly computed;
  TautPoly expected;
};

TwoVertexVerdict two_vertex_check(int a, int b);
// 2^{-delta_ab} [2^{a+b+2}(2a+1)!!(2b+1)!!(k_a k_b + k_{a+b}) - 2^{a+b+1}(2a+2b+3)!! k_{a+b}]
TautPoly two_vertex_formula(int a, int b);

}  // namespace ribbon
