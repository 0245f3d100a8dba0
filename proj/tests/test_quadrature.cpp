#include <doctest.h>

#include <cmath>

#include "ibfem/errors.hpp"
#include "ibfem/quadrature.hpp"

using namespace ibfem;

namespace {

// exact integral of x^a y^b over the reference triangle (0,0),(1,0),(0,1)
double tri_monomial_exact(int a, int b) {
  // a! b! / (a+b+2)!
  double v = 1.0;
  for (int i = 1; i <= a; ++i) v *= i;
  for (int i = 1; i <= b; ++i) v *= i;
  for (int i = 1; i <= a + b + 2; ++i) v /= i;
  return v;
}

}  // namespace

TEST_CASE("triangle rules integrate every monomial up to their exactness") {
  for (int ex = 1; ex <= 8; ++ex) {
    const QuadratureRule q = gauss_triangle(ex);
    REQUIRE(q.points.size() == q.weights.size());
    double wsum = 0;
    for (double w : q.weights) wsum += w;
    CHECK(std::fabs(wsum - 0.5) <= 1e-14);
    for (const Vec2& p : q.points) {
      CHECK(p.x >= 0.0);
      CHECK(p.y >= 0.0);
      CHECK(p.x + p.y <= 1.0 + 1e-14);
    }
    for (int a = 0; a <= ex; ++a)
      for (int b = 0; a + b <= ex; ++b) {
        double s = 0;
        for (size_t i = 0; i < q.points.size(); ++i)
          s += q.weights[i] * std::pow(q.points[i].x, a) * std::pow(q.points[i].y, b);
        CHECK(std::fabs(s - tri_monomial_exact(a, b)) <= 1e-14);
      }
  }
}

TEST_CASE("segment rules integrate every monomial up to their exactness") {
  for (int ex = 1; ex <= 9; ++ex) {
    const QuadratureRule q = gauss_segment(ex);
    double wsum = 0;
    for (double w : q.weights) wsum += w;
    CHECK(std::fabs(wsum - 1.0) <= 1e-14);
    for (const Vec2& p : q.points) {
      CHECK(p.x >= 0.0);
      CHECK(p.x <= 1.0);
    }
    for (int a = 0; a <= ex; ++a) {
      double s = 0;
      for (size_t i = 0; i < q.points.size(); ++i) s += q.weights[i] * std::pow(q.points[i].x, a);
      CHECK(std::fabs(s - 1.0 / (a + 1)) <= 1e-14);
    }
  }
}

TEST_CASE("out-of-range exactness is rejected") {
  CHECK_THROWS_AS(gauss_triangle(0), ConfigError);
  CHECK_THROWS_AS(gauss_triangle(9), ConfigError);
  CHECK_THROWS_AS(gauss_segment(0), ConfigError);
  CHECK_THROWS_AS(gauss_segment(10), ConfigError);
}
