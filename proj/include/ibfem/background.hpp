#pragma once

#include <functional>
#include <vector>

#include "ibfem/geometry.hpp"
#include "ibfem/knots.hpp"

namespace ibfem {

enum class BackgroundKind { bspline, lagrange };

// uniform grid of square cells
struct GridDesc {
  Vec2 origin;
  double h = 1.0;
  int ncx = 1, ncy = 1;

  double width() const { return ncx * h; }
  double height() const { return ncy * h; }
  Vec2 upper() const { return {origin.x + width(), origin.y + height()}; }
  bool contains(Vec2 p, double slack) const {
    return p.x >= origin.x - slack && p.x <= upper().x + slack &&
           p.y >= origin.y - slack && p.y <= upper().y + slack;
  }
};

// Tensor-product B-spline (maximal continuity) or continuous Lagrange space
// on the structured triangulation of the same grid. Dofs are numbered
// lexicographically, x fastest.
struct BackgroundSpace {
  BackgroundKind kind = BackgroundKind::bspline;
  int degree = 1;
  GridDesc grid;
  KnotVector kx, ky;  // bspline only
  int n1x = 0, n1y = 0;

  int dof_count() const { return n1x * n1y; }
};

BackgroundSpace make_background_space(BackgroundKind kind, int degree, const GridDesc& grid);

struct BasisSample {
  int index = 0;
  double value = 0;
  Vec2 grad;
  Sym2 hess;
};

// all basis functions nonzero at p, deterministic order
void eval_background_basis(const BackgroundSpace& space, Vec2 p, int nder,
                           std::vector<BasisSample>& out);

// Greville tensor grid (bspline) or nodal lattice (lagrange), one point per
// dof in dof order
std::vector<Vec2> interpolation_points(const BackgroundSpace& space);

// coefficients whose spline/FE interpolant matches f at the interpolation
// points; exact for polynomials up to the space degree
std::vector<double> interpolate_onto_background(const BackgroundSpace& space,
                                                const std::function<double(Vec2)>& f);

}  // namespace ibfem
