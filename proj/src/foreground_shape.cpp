#include "ibfem/foreground_shape.hpp"

#include "ibfem/errors.hpp"

namespace ibfem {

int foreground_nodes_per_element(int kappa) {
  if (kappa == 1) return 3;
  if (kappa == 2) return 6;
  throw CapabilityError("unsupported foreground degree " + std::to_string(kappa));
}

std::array<Vec2, 6> foreground_reference_nodes(int kappa) {
  foreground_nodes_per_element(kappa);
  return {Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1},
          Vec2{0.5, 0}, Vec2{0.5, 0.5}, Vec2{0, 0.5}};
}

ShapeEval eval_foreground_shape(int kappa, double xr, double yr, int nder) {
  ShapeEval s;
  s.count = foreground_nodes_per_element(kappa);
  const double l0 = 1.0 - xr - yr, l1 = xr, l2 = yr;
  if (kappa == 1) {
    s.val[0] = l0;
    s.val[1] = l1;
    s.val[2] = l2;
    if (nder >= 1) {
      s.grad[0] = {-1, -1};
      s.grad[1] = {1, 0};
      s.grad[2] = {0, 1};
    }
    return s;  // hessians vanish
  }
  s.val[0] = l0 * (2 * l0 - 1);
  s.val[1] = l1 * (2 * l1 - 1);
  s.val[2] = l2 * (2 * l2 - 1);
  s.val[3] = 4 * l0 * l1;
  s.val[4] = 4 * l1 * l2;
  s.val[5] = 4 * l2 * l0;
  if (nder >= 1) {
    s.grad[0] = {1 - 4 * l0, 1 - 4 * l0};
    s.grad[1] = {4 * l1 - 1, 0};
    s.grad[2] = {0, 4 * l2 - 1};
    s.grad[3] = {4 * (l0 - l1), -4 * l1};
    s.grad[4] = {4 * l2, 4 * l1};
    s.grad[5] = {-4 * l2, 4 * (l0 - l2)};
  }
  if (nder >= 2) {
    s.hess[0] = {4, 4, 4};
    s.hess[1] = {4, 0, 0};
    s.hess[2] = {0, 0, 4};
    s.hess[3] = {-8, -4, 0};
    s.hess[4] = {0, 4, 0};
    s.hess[5] = {0, -4, -8};
  }
  return s;
}

}  // namespace ibfem
