#pragma once

#include <array>

#include "ibfem/geometry.hpp"

namespace ibfem {

// Lagrange shape functions on the reference triangle (0,0),(1,0),(0,1).
// Node order: vertices first, then edge midpoints (01),(12),(20) for kappa=2.
struct ShapeEval {
  int count = 0;  // 3 (kappa=1) or 6 (kappa=2)
  double val[6] = {};
  Vec2 grad[6] = {};   // reference-coordinate gradients
  Sym2 hess[6] = {};   // reference-coordinate hessians
};

ShapeEval eval_foreground_shape(int kappa, double xr, double yr, int nder);

int foreground_nodes_per_element(int kappa);

// reference coordinates of the element nodes
std::array<Vec2, 6> foreground_reference_nodes(int kappa);

}  // namespace ibfem
