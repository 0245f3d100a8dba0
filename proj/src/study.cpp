#include "ibfem/study.hpp"

#include <cmath>
#include <cstdio>

#include "ibfem/cases.hpp"
#include "ibfem/errors.hpp"
#include "ibfem/mesh_io.hpp"
#include "ibfem/meshgen.hpp"

namespace ibfem {

namespace {

ManufacturedCase scalar_case(const std::string& name) {
  if (name == "poisson_trig") return poisson_trig_case();
  if (name == "poisson_linear") return poisson_linear_case();
  if (name == "poisson_quadratic") return poisson_quadratic_case();
  if (name == "biharmonic_trig") return biharmonic_trig_case();
  if (name == "biharmonic_linear") return biharmonic_linear_case();
  if (name == "biharmonic_quadratic") return biharmonic_quadratic_case();
  throw ConfigError("case \"" + name + "\" is not a scalar manufactured case");
}

FormParams form_params(const RunConfig& cfg, double grid_h) {
  FormParams p;
  p.variant = cfg.formulation.variant;
  p.c_pen = cfg.formulation.c_pen;
  p.alpha = cfg.formulation.alpha;
  p.beta = cfg.formulation.beta;
  p.youngs = cfg.formulation.youngs;
  p.poisson = cfg.formulation.poisson_ratio;
  p.h = grid_h;
  if (cfg.problem == "elasticity") {
    p.sym_markers = {marker_sym_x, marker_sym_y};
    p.traction_markers = {marker_outer};
  } else {
    p.dirichlet_markers = cfg.domain.markers();
  }
  return p;
}

}  // namespace

CaseResult run_case(const RunConfig& cfg, int level, Exec exec) {
  CaseResult res;
  const GridDesc grid = grid_for_level(cfg.background, level);
  res.space = make_background_space(cfg.background.kind, cfg.background.degree, grid);

  ForegroundMesh mesh = cfg.foreground.fitted
                            ? generate_fitted_foreground(cfg.domain, grid)
                            : generate_unfitted_foreground(
                                  cfg.domain, cfg.foreground.unfitted_eta_scale * grid.h);
  if (cfg.foreground.refine_levels > 0)
    mesh = refine_near_boundary(mesh, cfg.domain, cfg.foreground.refine_levels,
                                cfg.foreground.refine_marker);
  if (cfg.foreground.sliver_rel_tol > 0)
    mesh = filter_slivers(mesh, cfg.foreground.sliver_rel_tol).mesh;
  res.mesh = std::move(mesh);

  res.dofmap = build_dofmap(res.mesh, cfg.foreground.kappa);
  res.extraction = build_extraction(res.space, res.dofmap, exec);

  const FormParams params = form_params(cfg, grid.h);
  SolveOptions sopt;
  sopt.method = cfg.solver.method;
  sopt.tol = cfg.solver.tol;

  AssembledSystem sys;
  if (cfg.problem == "poisson") {
    const ManufacturedCase mc = scalar_case(cfg.case_name);
    sys = assemble_poisson(res.mesh, res.dofmap, mc.f, mc.u, params, exec);
  } else if (cfg.problem == "biharmonic") {
    const ManufacturedCase mc = scalar_case(cfg.case_name);
    sys = assemble_biharmonic(res.mesh, res.dofmap, mc.f, mc.u, mc.grad_u, params, exec);
  } else if (cfg.problem == "elasticity") {
    if (cfg.case_name != "hole_plate")
      throw ConfigError("elasticity runs use the hole_plate case");
    const HolePlateCase hc = hole_plate_case(cfg.domain.hole_radius, cfg.formulation.youngs,
                                             cfg.formulation.poisson_ratio,
                                             cfg.formulation.tension);
    sys = assemble_elasticity(res.mesh, res.dofmap, hc.traction, params, exec);
  } else {
    throw ConfigError("unknown problem \"" + cfg.problem + "\"");
  }
  sopt.symmetric = sys.symmetric;

  const SparseMatrix m2 = (sys.block_size == 2) ? expand_vector(res.extraction.mat, 2)
                                                : res.extraction.mat;
  res.system = triple_product(m2, sys.A, exec);
  res.rhs = restrict_rhs(m2, sys.B, exec);
  res.background = solve(res.system, res.rhs, sopt, res.summary.solve);
  res.coeffs = matvec(m2, res.background, exec);

  res.summary.level = level;
  res.summary.h = grid.h;
  res.summary.eta = res.mesh.eta;
  res.summary.n_background = res.extraction.num_active();
  res.summary.nu_foreground = res.dofmap.num_nodes();

  if (cfg.problem == "elasticity") {
    const HolePlateCase hc = hole_plate_case(cfg.domain.hole_radius, cfg.formulation.youngs,
                                             cfg.formulation.poisson_ratio,
                                             cfg.formulation.tension);
    const StressError se = stress_error_l2(res.mesh, res.dofmap, res.coeffs,
                                           cfg.formulation.youngs, cfg.formulation.poisson_ratio,
                                           hc.stress, exec);
    res.summary.err_l2 = se.abs;
    res.summary.err_h1 = 0;
    res.summary.err_h2 = 0;
    res.summary.has_h2 = false;
  } else {
    const ManufacturedCase mc = scalar_case(cfg.case_name);
    const bool want_h2 = (cfg.problem == "biharmonic");
    const ErrorNorms en = error_norms(res.mesh, res.dofmap, res.coeffs, mc.u, mc.grad_u,
                                      want_h2 ? mc.hess_u : HessField{}, exec);
    res.summary.err_l2 = en.l2;
    res.summary.err_h1 = en.h1;
    res.summary.err_h2 = en.h2;
    res.summary.has_h2 = en.has_h2;
  }
  return res;
}

namespace {

double pairwise_rate(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  if (e_coarse <= 0 || e_fine <= 0 || h_coarse <= h_fine) return std::nan("");
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

// least-squares slope of log(err) against log(h) over the last n levels
double fitted_rate(const std::vector<LevelResult>& levels, double LevelResult::* err, int n) {
  const int total = static_cast<int>(levels.size());
  const int use = std::min(n, total);
  if (use < 2) return std::nan("");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int i = total - use; i < total; ++i) {
    const double e = levels[i].*err;
    if (e <= 0) return std::nan("");
    const double lx = std::log(levels[i].h), ly = std::log(e);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  const double den = m * sxx - sx * sx;
  if (den == 0) return std::nan("");
  return (m * sxy - sx * sy) / den;
}

}  // namespace

ConvergenceReport convergence_study(const RunConfig& cfg, int level_lo, int level_hi, Exec exec) {
  if (level_hi < level_lo) throw ConfigError("study levels must be an increasing range");
  if (level_hi - level_lo < 2)
    throw ConfigError("a convergence study needs at least 3 levels (the fitted rate "
                      "is a least-squares slope over the finest three)");
  ConvergenceReport rep;
  for (int lv = level_lo; lv <= level_hi; ++lv) {
    rep.levels.push_back(run_case(cfg, lv, exec).summary);
    const SolveReport& sr = rep.levels.back().solve;
    if (sr.neg_pivots > 0)
      std::fprintf(stderr,
                   "warning: level %d stiffness is indefinite (%d negative pivots); "
                   "the Nitsche penalty may be below its stability threshold\n",
                   lv, sr.neg_pivots);
    if (sr.rank_deficiency > 0)
      std::fprintf(stderr,
                   "warning: level %d reduced stiffness is rank-deficient by %d "
                   "(linearly dependent trimmed background functions); "
                   "solved by rank-revealing QR\n",
                   lv, sr.rank_deficiency);
  }

  const int n = static_cast<int>(rep.levels.size());
  rep.rate_l2.assign(n, std::nan(""));
  rep.rate_h1.assign(n, std::nan(""));
  rep.rate_h2.assign(n, std::nan(""));
  for (int i = 1; i < n; ++i) {
    const auto& a = rep.levels[i - 1];
    const auto& b = rep.levels[i];
    rep.rate_l2[i] = pairwise_rate(a.err_l2, b.err_l2, a.h, b.h);
    rep.rate_h1[i] = pairwise_rate(a.err_h1, b.err_h1, a.h, b.h);
    if (a.has_h2 && b.has_h2) rep.rate_h2[i] = pairwise_rate(a.err_h2, b.err_h2, a.h, b.h);
  }
  rep.fit_rate_l2 = fitted_rate(rep.levels, &LevelResult::err_l2, 3);
  rep.fit_rate_h1 = fitted_rate(rep.levels, &LevelResult::err_h1, 3);
  rep.fit_rate_h2 = rep.levels.back().has_h2 ? fitted_rate(rep.levels, &LevelResult::err_h2, 3)
                                             : std::nan("");
  return rep;
}

std::string study_csv(const ConvergenceReport& rep) {
  std::string out = "R,h,eta,n_background,nu_foreground,errL2,errH1,errH2broken,rateL2,rateH1,"
                    "rateH2\n";
  auto cell = [](double v) { return std::isnan(v) ? std::string{} : format_g17(v); };
  for (size_t i = 0; i < rep.levels.size(); ++i) {
    const auto& L = rep.levels[i];
    out += std::to_string(L.level) + ',' + format_g17(L.h) + ',' + format_g17(L.eta) + ',' +
           std::to_string(L.n_background) + ',' + std::to_string(L.nu_foreground) + ',' +
           format_g17(L.err_l2) + ',' + format_g17(L.err_h1) + ',' +
           (L.has_h2 ? format_g17(L.err_h2) : std::string{}) + ',' + cell(rep.rate_l2[i]) + ',' +
           cell(rep.rate_h1[i]) + ',' + cell(rep.rate_h2[i]) + '\n';
  }
  return out;
}

nlohmann::json study_json(const RunConfig& cfg, const ConvergenceReport& rep) {
  nlohmann::json j;
  j["config"] = effective_config(cfg);
  auto& levels = j["levels"] = nlohmann::json::array();
  auto num = [](double v) {
    return std::isnan(v) ? nlohmann::json() : nlohmann::json(v);
  };
  for (size_t i = 0; i < rep.levels.size(); ++i) {
    const auto& L = rep.levels[i];
    nlohmann::json row;
    row["level"] = L.level;
    row["h"] = L.h;
    row["eta"] = L.eta;
    row["n_background"] = L.n_background;
    row["nu_foreground"] = L.nu_foreground;
    row["err_l2"] = L.err_l2;
    row["err_h1"] = L.err_h1;
    if (L.has_h2) row["err_h2"] = L.err_h2;
    row["rate_l2"] = num(rep.rate_l2[i]);
    row["rate_h1"] = num(rep.rate_h1[i]);
    if (L.has_h2) row["rate_h2"] = num(rep.rate_h2[i]);
    row["solver"] = {{"method", L.solve.method},
                     {"iterations", L.solve.iterations},
                     {"rel_residual", L.solve.rel_residual},
                     {"converged", L.solve.converged},
                     {"neg_pivots", L.solve.neg_pivots},
                     {"rank_deficiency", L.solve.rank_deficiency}};
    levels.push_back(row);
  }
  j["fitted_rates"] = {{"rate_l2", num(rep.fit_rate_l2)},
                       {"rate_h1", num(rep.fit_rate_h1)},
                       {"rate_h2", num(rep.fit_rate_h2)}};
  return j;
}

std::vector<std::string> check_windows(const RunConfig& cfg, const ConvergenceReport& rep) {
  std::vector<std::string> failed;
  auto check = [&](const std::string& name, double value) {
    auto it = cfg.windows.find(name);
    if (it == cfg.windows.end()) return;
    if (std::isnan(value) || value < it->second[0] || value > it->second[1])
      failed.push_back(name);
  };
  check("rate_l2", rep.fit_rate_l2);
  check("rate_h1", rep.fit_rate_h1);
  check("rate_h2", rep.fit_rate_h2);
  return failed;
}

}  // namespace ibfem
