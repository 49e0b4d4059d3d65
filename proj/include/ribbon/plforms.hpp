#pragma once

#include "ribbon/graph.hpp"
#include "ribbon/rational.hpp"

#include <string>
#include <vector>

namespace ribbon {

// dense row-major matrix of exact rationals
class RMatrix {
public:
  RMatrix() = default;
  RMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return r_; }
  int cols() const { return c_; }
  Rational& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  RMatrix transpose() const;
  void swap_rows(int i, int j);
  RMatrix& operator+=(const RMatrix& o);
  RMatrix& operator/=(const Rational& d);

private:
  int r_ = 0, c_ = 0;
  std::vector<Rational> a_;
};

RMatrix operator*(const RMatrix& a, const RMatrix& b);
RMatrix operator/(RMatrix a, const Rational& d);

// 2-form sum_{u<v} A(u,v) de_u ^ de_v; coordinates are edges (smaller side)
struct CellForm {
  std::vector<int> edges;
  RMatrix A;

  int dim() const { return static_cast<int>(edges.size()); }
};

// the form of one hole; coordinates are every edge of g
CellForm omega_on_cell(const MarkedMetricGraph& g, const std::string& p);
// sum over holes of l_p^2 omega_p
CellForm big_omega(const MarkedMetricGraph& g);

// Pfaffian by expansion along the first row, memoized over index subsets
Rational pfaffian(const RMatrix& A);
Rational determinant(const RMatrix& A);  // fraction-free elimination

// columns of `basis` span the slice; returns k! Pf(B^T A B)
Rational wedge_power_top(const CellForm& form, int k, const RMatrix& basis);

// basis of {x : M x = 0} from exact row reduction, as columns
RMatrix kernel_basis(const RMatrix& M);

// integral of omega^k over {x >= 0, sum c_i x_i = T} parametrized by dropping
// coordinate `drop`; |k! Pf| times the simplex volume
Rational slice_simplex_integral(const CellForm& form, const std::vector<Rational>& c, const Rational& T, int drop);

Rational fiber_integral_disk(int r, const Rational& eps);

struct CylinderFiber {
  Rational integral;
  long raw_configurations = 0;  // e0 attachment choices before deduplication
  long simplices = 0;           // distinct top cells
  std::vector<Rational> per_simplex;
};

CylinderFiber fiber_integral_cyl(int v1, int v2, const Rational& eps);

struct Nondegeneracy {
  bool nondegenerate = false;
  Rational pfaffian = 1;
  int slice_dim = 0;
};

Nondegeneracy nondegeneracy_check(const MarkedMetricGraph& g);

}  // namespace ribbon
