#pragma once

#include <functional>
#include <vector>

#include "ibfem/background.hpp"
#include "ibfem/csr.hpp"
#include "ibfem/dofmap.hpp"
#include "ibfem/exec.hpp"

namespace ibfem {

// Row i holds the background basis values at foreground node x_i, so the
// interpolated basis is N^ = sum_i M_ij phi_i. Background functions that
// vanish at every node are pruned; active_map sends pruned column -> original
// background dof.
struct ExtractionMatrix {
  SparseMatrix mat;  // num_nodes x active count
  std::vector<int> active_map;
  std::vector<Vec2> node_coords;
  int kappa = 1;

  int num_nodes() const { return mat.rows; }
  int num_active() const { return mat.cols; }
};

// entries below this magnitude are not stored
inline constexpr double extraction_drop_tol = 1e-14;

ExtractionMatrix build_extraction(const BackgroundSpace& space, const LagrangeDofMap& dofmap,
                                  Exec exec = Exec::parallel);

// foreground coefficients c = M d, d over the full background numbering
std::vector<double> interpolate(const ExtractionMatrix& m, const std::vector<double>& d_full);

// same, d already restricted to the active columns
std::vector<double> interpolate_active(const ExtractionMatrix& m,
                                       const std::vector<double>& d_active);

// max |row sum - 1|
double check_partition_of_unity(const ExtractionMatrix& m);

// max nodal error over all monomials of total degree <= degree, interpolated
// through the background space and extracted
double check_polynomial_reproduction(const BackgroundSpace& space, const ExtractionMatrix& m,
                                     int degree);

// Kronecker block expansion for vector problems: each entry becomes a
// ncomp x ncomp identity block, components interleaved
SparseMatrix expand_vector(const SparseMatrix& m, int ncomp);

}  // namespace ibfem
