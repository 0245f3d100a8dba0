#pragma once

#include <string>
#include <vector>

#include "ibfem/csr.hpp"
#include "ibfem/exec.hpp"

namespace ibfem {

// K = M^T A M, the reduced operator on background coefficients
SparseMatrix triple_product(const SparseMatrix& m, const SparseMatrix& a,
                            Exec exec = Exec::parallel);

// reference route, no threading anywhere
SparseMatrix triple_product_serial(const SparseMatrix& m, const SparseMatrix& a);

// F = M^T B
std::vector<double> restrict_rhs(const SparseMatrix& m, const std::vector<double>& b,
                                 Exec exec = Exec::parallel);

enum class SolveMethod { direct, iterative };

struct SolveOptions {
  SolveMethod method = SolveMethod::direct;
  double tol = 1e-12;      // relative residual target (iterative)
  bool symmetric = true;   // picks CG vs BiCGStab
};

struct SolveReport {
  int iterations = 0;           // 0 for direct
  double rel_residual = 0.0;    // recomputed from the returned solution
  bool converged = false;
  int neg_pivots = 0;           // from LDLT inertia; > 0 flags an indefinite system
  int rank_deficiency = 0;      // from rank-revealing QR; > 0 flags dependent columns
  std::string method;
};

// Solve K d = F. Throws SolverError when K has an empty row or column
// (an uncovered dof) or when factorization/iteration fails.
std::vector<double> solve(const SparseMatrix& k, const std::vector<double>& f,
                          const SolveOptions& opts, SolveReport& report);

}  // namespace ibfem
