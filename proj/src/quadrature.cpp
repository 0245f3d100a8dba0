#include "ibfem/quadrature.hpp"

#include <cmath>

#include "ibfem/errors.hpp"

namespace ibfem {

namespace {

// 1D Gauss-Legendre on [-1,1], closed forms up to 5 points
void legendre_nodes(int m, std::vector<double>& x, std::vector<double>& w) {
  x.clear();
  w.clear();
  switch (m) {
    case 1:
      x = {0.0};
      w = {2.0};
      return;
    case 2: {
      const double a = 1.0 / std::sqrt(3.0);
      x = {-a, a};
      w = {1.0, 1.0};
      return;
    }
    case 3: {
      const double a = std::sqrt(0.6);
      x = {-a, 0.0, a};
      w = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
      return;
    }
    case 4: {
      const double r = 2.0 * std::sqrt(1.2);
      const double a = std::sqrt((3.0 - r) / 7.0), b = std::sqrt((3.0 + r) / 7.0);
      const double s = std::sqrt(30.0);
      const double wa = (18.0 + s) / 36.0, wb = (18.0 - s) / 36.0;
      x = {-b, -a, a, b};
      w = {wb, wa, wa, wb};
      return;
    }
    case 5: {
      const double r = 2.0 * std::sqrt(10.0 / 7.0);
      const double a = std::sqrt(5.0 - r) / 3.0, b = std::sqrt(5.0 + r) / 3.0;
      const double s = 13.0 * std::sqrt(70.0);
      const double wa = (322.0 + s) / 900.0, wb = (322.0 - s) / 900.0;
      x = {-b, -a, 0.0, a, b};
      w = {wb, wa, 128.0 / 225.0, wa, wb};
      return;
    }
    default:
      throw ConfigError("unsupported Gauss point count");
  }
}

void push_symmetric3(QuadratureRule& r, double x, double y, double w) {
  // cyclic barycentric images of (x,y)
  r.points.push_back({x, y});
  r.points.push_back({y, 1.0 - x - y});
  r.points.push_back({1.0 - x - y, x});
  r.weights.insert(r.weights.end(), 3, w);
}

}  // namespace

QuadratureRule gauss_triangle(int exactness) {
  if (exactness < 1 || exactness > 8)
    throw ConfigError("triangle quadrature exactness must be in [1,8]");
  QuadratureRule r;
  if (exactness <= 1) {
    r.exactness = 1;
    r.points = {{1.0 / 3.0, 1.0 / 3.0}};
    r.weights = {0.5};
    return r;
  }
  if (exactness == 2) {
    r.exactness = 2;
    push_symmetric3(r, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0);
    return r;
  }
  if (exactness <= 5) {
    // the classic 7-point rule
    r.exactness = 5;
    const double s15 = std::sqrt(15.0);
    r.points = {{1.0 / 3.0, 1.0 / 3.0}};
    r.weights = {9.0 / 80.0};
    const double a1 = (6.0 - s15) / 21.0, w1 = (155.0 - s15) / 2400.0;
    const double a2 = (6.0 + s15) / 21.0, w2 = (155.0 + s15) / 2400.0;
    push_symmetric3(r, a1, a1, w1);
    push_symmetric3(r, a2, a2, w2);
    return r;
  }
  // collapsed tensor Gauss (x = u, y = v(1-u), jacobian 1-u), then averaged
  // over the three vertex rotations to restore symmetry
  const int m = (exactness + 3) / 2;  // 2m-1 >= exactness+1
  std::vector<double> gx, gw;
  legendre_nodes(m, gx, gw);
  r.exactness = 2 * m - 2;
  for (int i = 0; i < m; ++i) {
    const double u = 0.5 * (gx[i] + 1.0), wu = 0.5 * gw[i];
    for (int j = 0; j < m; ++j) {
      const double v = 0.5 * (gx[j] + 1.0), wv = 0.5 * gw[j];
      push_symmetric3(r, u, v * (1.0 - u), wu * wv * (1.0 - u) / 3.0);
    }
  }
  return r;
}

QuadratureRule gauss_segment(int exactness) {
  if (exactness < 1 || exactness > 9)
    throw ConfigError("segment quadrature exactness must be in [1,9]");
  const int m = (exactness + 2) / 2;  // 2m-1 >= exactness
  std::vector<double> gx, gw;
  legendre_nodes(m, gx, gw);
  QuadratureRule r;
  r.exactness = 2 * m - 1;
  for (int i = 0; i < m; ++i) {
    r.points.push_back({0.5 * (gx[i] + 1.0), 0.0});
    r.weights.push_back(0.5 * gw[i]);
  }
  return r;
}

}  // namespace ibfem
