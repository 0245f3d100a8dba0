#include "ibfem/extraction.hpp"

#include <algorithm>
#include <cmath>

#include "ibfem/errors.hpp"

namespace ibfem {

ExtractionMatrix build_extraction(const BackgroundSpace& space, const LagrangeDofMap& dofmap,
                                  Exec exec) {
  const int nu = dofmap.num_nodes();
  ExtractionMatrix ex;
  ex.kappa = dofmap.kappa;
  ex.node_coords = dofmap.node_coords;

  // per-row evaluation, rows are independent
  std::vector<std::vector<BasisSample>> rows(nu);
  std::vector<std::string> row_error(nu);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int i = 0; i < nu; ++i) {
    try {
      eval_background_basis(space, dofmap.node_coords[i], 0, rows[i]);
    } catch (const std::exception& e) {
      row_error[i] = e.what();
    }
  }
  for (int i = 0; i < nu; ++i)
    if (!row_error[i].empty()) throw GeometryError(row_error[i]);

  // prune background functions that touch no node
  std::vector<char> seen(space.dof_count(), 0);
  for (int i = 0; i < nu; ++i)
    for (const auto& s : rows[i])
      if (std::fabs(s.value) > extraction_drop_tol) seen[s.index] = 1;
  std::vector<int> col_of(space.dof_count(), -1);
  for (int j = 0; j < space.dof_count(); ++j) {
    if (seen[j]) {
      col_of[j] = static_cast<int>(ex.active_map.size());
      ex.active_map.push_back(j);
    }
  }

  TripletBuffer t;
  for (int i = 0; i < nu; ++i) {
    bool any = false;
    for (const auto& s : rows[i]) {
      if (std::fabs(s.value) > extraction_drop_tol) {
        t.add(i, col_of[s.index], s.value);
        any = true;
      }
    }
    if (!any)
      throw GeometryError("foreground node " + std::to_string(i) +
                          " is not covered by any background function");
  }
  ex.mat = csr_from_triplets(nu, static_cast<int>(ex.active_map.size()), t);
  return ex;
}

std::vector<double> interpolate(const ExtractionMatrix& m, const std::vector<double>& d_full) {
  std::vector<double> d(m.num_active());
  for (int j = 0; j < m.num_active(); ++j) {
    const int col = m.active_map[j];
    if (col < 0 || col >= static_cast<int>(d_full.size()))
      throw SolverError("background coefficient vector too short");
    d[j] = d_full[col];
  }
  return matvec(m.mat, d);
}

std::vector<double> interpolate_active(const ExtractionMatrix& m,
                                       const std::vector<double>& d_active) {
  return matvec(m.mat, d_active);
}

double check_partition_of_unity(const ExtractionMatrix& m) {
  double worst = 0.0;
  for (int i = 0; i < m.mat.rows; ++i) {
    double s = 0.0;
    for (int k = m.mat.row_ptr[i]; k < m.mat.row_ptr[i + 1]; ++k) s += m.mat.vals[k];
    worst = std::max(worst, std::fabs(s - 1.0));
  }
  return worst;
}

double check_polynomial_reproduction(const BackgroundSpace& space, const ExtractionMatrix& m,
                                     int degree) {
  const int max_deg = std::min(space.degree, m.kappa);
  if (degree < 0 || degree > max_deg)
    throw CapabilityError("pairing cannot reproduce polynomial degree " + std::to_string(degree));
  double worst = 0.0;
  for (int px = 0; px <= degree; ++px) {
    for (int py = 0; py + px <= degree; ++py) {
      auto mono = [px, py](Vec2 p) {
        double v = 1.0;
        for (int k = 0; k < px; ++k) v *= p.x;
        for (int k = 0; k < py; ++k) v *= p.y;
        return v;
      };
      const auto d = interpolate_onto_background(space, mono);
      const auto c = interpolate(m, d);
      for (int i = 0; i < m.num_nodes(); ++i)
        worst = std::max(worst, std::fabs(c[i] - mono(m.node_coords[i])));
    }
  }
  return worst;
}

SparseMatrix expand_vector(const SparseMatrix& m, int ncomp) {
  if (ncomp < 1) throw SolverError("component count must be positive");
  SparseMatrix e;
  e.rows = m.rows * ncomp;
  e.cols = m.cols * ncomp;
  e.row_ptr.assign(e.rows + 1, 0);
  e.col_idx.reserve(m.nnz() * ncomp);
  e.vals.reserve(m.nnz() * ncomp);
  for (int i = 0; i < m.rows; ++i) {
    for (int c = 0; c < ncomp; ++c) {
      for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
        e.col_idx.push_back(m.col_idx[k] * ncomp + c);
        e.vals.push_back(m.vals[k]);
      }
      e.row_ptr[i * ncomp + c + 1] = static_cast<int>(e.col_idx.size());
    }
  }
  return e;
}

}  // namespace ibfem
