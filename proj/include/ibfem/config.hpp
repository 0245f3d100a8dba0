#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "ibfem/background.hpp"
#include "ibfem/domain.hpp"
#include "ibfem/forms.hpp"
#include "ibfem/solver.hpp"

namespace ibfem {

struct BackgroundConfig {
  BackgroundKind kind = BackgroundKind::bspline;
  int degree = 1;
  Vec2 box_lo{-1, -1}, box_hi{1, 1};
  int cells_level0 = 4;  // cells across x at level 0; doubles per level
};

struct ForegroundConfig {
  int kappa = 1;
  bool fitted = true;
  double unfitted_eta_scale = 0.8;  // target eta as a fraction of the grid h
  int refine_levels = 0;
  int refine_marker = marker_hole;
  double sliver_rel_tol = 1e-5;
};

struct FormulationConfig {
  NitscheVariant variant = NitscheVariant::nonsymmetric;
  double c_pen = 0.0;
  double alpha = 5.0;
  double beta = 5.0;
  double youngs = 200e9;
  double poisson_ratio = 0.3;
  double tension = 1e6;
};

struct SolverConfig {
  SolveMethod method = SolveMethod::direct;
  double tol = 1e-12;
};

// one fully specified run: problem + manufactured case + discretization
struct RunConfig {
  std::string problem = "poisson";  // poisson | biharmonic | elasticity
  std::string case_name = "poisson_trig";
  DomainShape domain;
  BackgroundConfig background;
  ForegroundConfig foreground;
  FormulationConfig formulation;
  SolverConfig solver;
  int level = 0;
  std::string output_prefix = "run";
  // optional convergence gates: name -> [lo, hi] on the fitted rate
  std::map<std::string, std::array<double, 2>> windows;
};

RunConfig parse_config_json(const nlohmann::json& j);
RunConfig parse_config_file(const std::string& path);

// full round-trip echo with every default filled in
nlohmann::json effective_config(const RunConfig& c);

GridDesc grid_for_level(const BackgroundConfig& bg, int level);

}  // namespace ibfem
