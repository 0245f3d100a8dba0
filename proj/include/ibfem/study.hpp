#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ibfem/config.hpp"
#include "ibfem/extraction.hpp"
#include "ibfem/mesh.hpp"
#include "ibfem/norms.hpp"
#include "ibfem/solver.hpp"

namespace ibfem {

struct LevelResult {
  int level = 0;
  double h = 0;             // background cell size
  double eta = 0;           // foreground size measure
  int n_background = 0;     // active background functions (per component)
  int nu_foreground = 0;    // foreground nodes (per component)
  double err_l2 = 0;
  double err_h1 = 0;
  double err_h2 = 0;
  bool has_h2 = false;
  SolveReport solve;
};

// everything one run produces, kept for export and inspection
struct CaseResult {
  LevelResult summary;
  BackgroundSpace space;
  ForegroundMesh mesh;
  LagrangeDofMap dofmap;
  ExtractionMatrix extraction;
  SparseMatrix system;               // reduced operator
  std::vector<double> rhs;           // reduced load
  std::vector<double> background;    // solved coefficients (active numbering)
  std::vector<double> coeffs;        // recovered foreground nodal values
};

CaseResult run_case(const RunConfig& cfg, int level, Exec exec = Exec::parallel);

struct ConvergenceReport {
  std::vector<LevelResult> levels;
  // pairwise rates between consecutive levels; entry 0 is NaN
  std::vector<double> rate_l2, rate_h1, rate_h2;
  // least-squares slopes over the finest three levels
  double fit_rate_l2 = 0, fit_rate_h1 = 0, fit_rate_h2 = 0;
};

ConvergenceReport convergence_study(const RunConfig& cfg, int level_lo, int level_hi,
                                    Exec exec = Exec::parallel);

// CSV with one row per level; rate columns are empty on the first row
std::string study_csv(const ConvergenceReport& rep);
nlohmann::json study_json(const RunConfig& cfg, const ConvergenceReport& rep);

// names of the configured windows the fitted rates violate
std::vector<std::string> check_windows(const RunConfig& cfg, const ConvergenceReport& rep);

}  // namespace ibfem
