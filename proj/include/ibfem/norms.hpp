#pragma once

#include <functional>

#include "ibfem/dofmap.hpp"
#include "ibfem/exec.hpp"
#include "ibfem/forms.hpp"
#include "ibfem/mesh.hpp"

namespace ibfem {

using HessField = std::function<Sym2(Vec2)>;

struct ErrorNorms {
  double l2 = 0;
  double h1 = 0;   // gradient seminorm
  double h2 = 0;   // full broken H2 norm (value + gradient + hessian parts)
  bool has_h2 = false;
};

// L2 / H1 / broken H2 error of the nodal field against the exact solution;
// pass a null hess_u to skip the second derivative part
ErrorNorms error_norms(const ForegroundMesh& mesh, const LagrangeDofMap& dofmap,
                       const std::vector<double>& coeffs, const ScalarField& u,
                       const VectorField& grad_u, const HessField& hess_u,
                       Exec exec = Exec::parallel);

// L2 norm of the plane-strain stress error for an interleaved displacement
// field, and the L2 norm of the exact stress for normalization
struct StressError {
  double abs = 0;
  double rel = 0;
};
StressError stress_error_l2(const ForegroundMesh& mesh, const LagrangeDofMap& dofmap,
                            const std::vector<double>& disp, double youngs, double poisson,
                            const HessField& stress_exact, Exec exec = Exec::parallel);

}  // namespace ibfem
