#pragma once

#include <functional>
#include <vector>

#include "ibfem/background.hpp"
#include "ibfem/csr.hpp"
#include "ibfem/dofmap.hpp"
#include "ibfem/exec.hpp"
#include "ibfem/mesh.hpp"

namespace ibfem {

using ScalarField = std::function<double(Vec2)>;
using VectorField = std::function<Vec2(Vec2)>;
// applied boundary load, called with (position, outward normal)
using TractionField = std::function<Vec2(Vec2, Vec2)>;

enum class NitscheVariant { symmetric, nonsymmetric };

struct FormParams {
  NitscheVariant variant = NitscheVariant::symmetric;
  double c_pen = 10.0;   // Dirichlet penalty scale (second order)
  double alpha = 5.0;    // displacement penalty scale (fourth order)
  double beta = 5.0;     // normal-slope penalty scale (fourth order)
  double youngs = 200e9;
  double poisson = 0.3;
  double h = 0.0;        // penalty length scale, set from the mesh
  std::vector<int> dirichlet_markers;  // value-imposing facets
  std::vector<int> sym_markers;        // zero normal displacement facets
  std::vector<int> traction_markers;   // applied-traction facets
};

struct AssembledSystem {
  SparseMatrix A;          // bilinear form on foreground nodes
  std::vector<double> B;   // linear form
  bool symmetric = true;
  int block_size = 1;      // dofs per node
};

// -grad.grad with Dirichlet data imposed weakly on the marked facets
AssembledSystem assemble_poisson(const ForegroundMesh& mesh, const LagrangeDofMap& dofmap,
                                 const ScalarField& f, const ScalarField& dirichlet,
                                 const FormParams& params, Exec exec = Exec::parallel);

// laplacian-laplacian form for the fourth order problem; both the value and
// the normal slope of the solution are imposed weakly from sigma
AssembledSystem assemble_biharmonic(const ForegroundMesh& mesh, const LagrangeDofMap& dofmap,
                                    const ScalarField& f, const ScalarField& sigma,
                                    const VectorField& grad_sigma, const FormParams& params,
                                    Exec exec = Exec::parallel);

// plane strain, dofs interleaved (node i -> 2i, 2i+1); sym_markers get weak
// zero normal displacement, traction_markers get the applied load
AssembledSystem assemble_elasticity(const ForegroundMesh& mesh, const LagrangeDofMap& dofmap,
                                    const TractionField& traction, const FormParams& params,
                                    Exec exec = Exec::parallel);

struct LameConstants {
  double lambda = 0.0, mu = 0.0;
};
LameConstants plane_strain_constants(double youngs, double poisson);

// Reference route for the second order problem: the background basis is
// integrated directly on the foreground cells with the same quadrature, in
// the full background numbering. Serial; used to cross-check the extracted
// operator M^T A M.
AssembledSystem assemble_quadrature_reference_poisson(const BackgroundSpace& space,
                                                      const ForegroundMesh& mesh, int kappa,
                                                      const ScalarField& f,
                                                      const ScalarField& dirichlet,
                                                      const FormParams& params);

}  // namespace ibfem
