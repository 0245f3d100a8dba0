#pragma once

#include "ibfem/background.hpp"
#include "ibfem/domain.hpp"
#include "ibfem/mesh.hpp"

namespace ibfem {

// Intersect the background triangulation of the grid with the domain.
// Cells fully inside contribute both their triangles, cut cells are
// re-triangulated from the vertex in/out pattern, outside cells drop.
ForegroundMesh generate_fitted_foreground(const DomainShape& domain, const GridDesc& grid);

// Structured triangulation of the domain itself (square kinds only),
// built in the square's own frame; largest cell edge <= target_eta.
ForegroundMesh generate_unfitted_foreground(const DomainShape& domain, double target_eta);

// Red-green refinement of the elements touching the marked boundary; new
// vertices on the marked boundary are pulled onto the analytic curve.
ForegroundMesh refine_near_boundary(const ForegroundMesh& mesh, const DomainShape& domain,
                                    int levels, int marker);

struct FilterResult {
  ForegroundMesh mesh;
  int removed = 0;
  double threshold = 0;  // absolute area below which elements were dropped
};

// drop elements with area < rel_tol * max element area, along with their
// boundary facets
FilterResult filter_slivers(const ForegroundMesh& mesh, double rel_tol = 1e-5);

namespace detail {

// cut one CCW triangle against the domain; appends kept sub-triangles.
// tol is the absolute boundary tie tolerance for vertex classification.
void cut_triangle(const DomainShape& domain, const std::array<Vec2, 3>& tri, double tol,
                  std::vector<std::array<Vec2, 3>>& out);

}  // namespace detail

}  // namespace ibfem
