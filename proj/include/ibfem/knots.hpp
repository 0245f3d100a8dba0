#pragma once

#include <vector>

namespace ibfem {

// open knot vector; first/last knots repeated degree+1 times
struct KnotVector {
  int degree = 1;
  std::vector<double> knots;

  int num_basis() const { return static_cast<int>(knots.size()) - degree - 1; }
  int num_spans() const { return num_basis() - degree; }
  double a() const { return knots.front(); }
  double b() const { return knots.back(); }
};

// uniform spans on [a,b]
KnotVector make_open_uniform_knots(int degree, int n_spans, double a, double b);

// index of the knot span containing x; right-continuous at interior knots,
// the last span owns x = b
int find_span(const KnotVector& kv, double x);

// the degree+1 basis functions that are nonzero at x, with derivatives
struct SplineBasis1D {
  int first = 0;  // global index of the first nonzero function
  int count = 0;  // degree+1
  double val[5] = {};
  double d1[5] = {};
  double d2[5] = {};
};

SplineBasis1D eval_bspline_1d(const KnotVector& kv, double x, int nder);

// knot averages; one abscissa per basis function
std::vector<double> greville_abscissae(const KnotVector& kv);

}  // namespace ibfem
