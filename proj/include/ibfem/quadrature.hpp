#pragma once

#include <vector>

#include "ibfem/geometry.hpp"

namespace ibfem {

struct QuadratureRule {
  int exactness = 0;
  std::vector<Vec2> points;     // reference triangle coords; segments use .x only
  std::vector<double> weights;  // sum to the reference measure
};

// symmetric rule on the reference triangle (0,0),(1,0),(0,1); weights sum 1/2
QuadratureRule gauss_triangle(int exactness);  // exactness in [1,8]

// Gauss-Legendre on [0,1]; weights sum 1
QuadratureRule gauss_segment(int exactness);  // exactness in [1,9]

}  // namespace ibfem
