#include "ibfem/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "ibfem/errors.hpp"

namespace ibfem {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
}

double get_num(const json& j, const std::string& where, const std::string& key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number()) throw ConfigError(where + "." + key + " must be a number");
  return j[key].get<double>();
}

int get_int(const json& j, const std::string& where, const std::string& key, int dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return j[key].get<int>();
}

bool get_bool(const json& j, const std::string& where, const std::string& key, bool dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_boolean()) throw ConfigError(where + "." + key + " must be a boolean");
  return j[key].get<bool>();
}

std::string get_str(const json& j, const std::string& where, const std::string& key,
                    const std::string& dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_string()) throw ConfigError(where + "." + key + " must be a string");
  return j[key].get<std::string>();
}

Vec2 get_vec2(const json& j, const std::string& where, const std::string& key, Vec2 dflt) {
  if (!j.contains(key)) return dflt;
  const auto& v = j[key];
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError(where + "." + key + " must be [x, y]");
  return {v[0].get<double>(), v[1].get<double>()};
}

DomainShape parse_domain(const json& j) {
  check_keys(j, "domain",
             {"kind", "center", "half_width", "angle", "normal", "offset", "side", "hole_radius"});
  const std::string kind = get_str(j, "domain", "kind", "");
  if (kind == "rotated_square") {
    return make_rotated_square(get_vec2(j, "domain", "center", {0, 0}),
                               get_num(j, "domain", "half_width", 0.25 * std::sqrt(2.0)),
                               get_num(j, "domain", "angle", 0.25 * 3.14159265358979323846));
  }
  if (kind == "axis_square") {
    return make_axis_square(get_vec2(j, "domain", "center", {0, 0}),
                            get_num(j, "domain", "half_width", 0.5));
  }
  if (kind == "half_plane") {
    return make_half_plane(get_vec2(j, "domain", "normal", {1, 0}),
                           get_num(j, "domain", "offset", 0.0));
  }
  if (kind == "quadrant_with_hole") {
    return make_quadrant_with_hole(get_num(j, "domain", "side", 4.0),
                                   get_num(j, "domain", "hole_radius", 1.0));
  }
  throw ConfigError("domain.kind must be one of rotated_square, axis_square, half_plane, "
                    "quadrant_with_hole");
}

BackgroundConfig parse_background(const json& j) {
  check_keys(j, "background", {"kind", "degree", "box", "cells_level0"});
  BackgroundConfig bg;
  const std::string kind = get_str(j, "background", "kind", "bspline");
  if (kind == "bspline")
    bg.kind = BackgroundKind::bspline;
  else if (kind == "lagrange")
    bg.kind = BackgroundKind::lagrange;
  else
    throw ConfigError("background.kind must be bspline or lagrange");
  bg.degree = get_int(j, "background", "degree", 1);
  if (j.contains("box")) {
    const auto& b = j["box"];
    if (!b.is_array() || b.size() != 2)
      throw ConfigError("background.box must be [[x0,y0],[x1,y1]]");
    bg.box_lo = {b[0][0].get<double>(), b[0][1].get<double>()};
    bg.box_hi = {b[1][0].get<double>(), b[1][1].get<double>()};
  }
  if (bg.box_hi.x <= bg.box_lo.x || bg.box_hi.y <= bg.box_lo.y)
    throw ConfigError("background.box must have positive extents");
  bg.cells_level0 = get_int(j, "background", "cells_level0", 4);
  if (bg.cells_level0 < 1) throw ConfigError("background.cells_level0 must be positive");
  return bg;
}

ForegroundConfig parse_foreground(const json& j) {
  check_keys(j, "foreground",
             {"kappa", "fitted", "unfitted_eta_scale", "refine_levels", "refine_marker",
              "sliver_rel_tol"});
  ForegroundConfig fg;
  fg.kappa = get_int(j, "foreground", "kappa", 1);
  fg.fitted = get_bool(j, "foreground", "fitted", true);
  fg.unfitted_eta_scale = get_num(j, "foreground", "unfitted_eta_scale", 0.8);
  if (fg.unfitted_eta_scale <= 0) throw ConfigError("foreground.unfitted_eta_scale must be > 0");
  fg.refine_levels = get_int(j, "foreground", "refine_levels", 0);
  fg.refine_marker = get_int(j, "foreground", "refine_marker", marker_hole);
  fg.sliver_rel_tol = get_num(j, "foreground", "sliver_rel_tol", 1e-5);
  return fg;
}

FormulationConfig parse_formulation(const json& j, const std::string& problem) {
  check_keys(j, "formulation",
             {"variant", "c_pen", "alpha", "beta", "youngs", "poisson_ratio", "tension"});
  FormulationConfig fo;
  const std::string variant = get_str(j, "formulation", "variant", "nonsymmetric");
  if (variant == "symmetric")
    fo.variant = NitscheVariant::symmetric;
  else if (variant == "nonsymmetric")
    fo.variant = NitscheVariant::nonsymmetric;
  else
    throw ConfigError("formulation.variant must be symmetric or nonsymmetric");
  fo.c_pen = get_num(j, "formulation", "c_pen", variant == "symmetric" ? 10.0 : 0.0);
  fo.alpha = get_num(j, "formulation", "alpha", 5.0);
  // beta is the normal-gradient penalty for the biharmonic form and the
  // slip-condition penalty (scaled by mu/h) for elasticity
  fo.beta = get_num(j, "formulation", "beta", problem == "elasticity" ? 10.0 : 5.0);
  fo.youngs = get_num(j, "formulation", "youngs", 200e9);
  fo.poisson_ratio = get_num(j, "formulation", "poisson_ratio", 0.3);
  fo.tension = get_num(j, "formulation", "tension", 1e6);
  return fo;
}

SolverConfig parse_solver(const json& j) {
  check_keys(j, "solver", {"method", "tol"});
  SolverConfig so;
  const std::string method = get_str(j, "solver", "method", "direct");
  if (method == "direct")
    so.method = SolveMethod::direct;
  else if (method == "iterative")
    so.method = SolveMethod::iterative;
  else
    throw ConfigError("solver.method must be direct or iterative");
  so.tol = get_num(j, "solver", "tol", 1e-12);
  if (so.tol <= 0) throw ConfigError("solver.tol must be positive");
  return so;
}

}  // namespace

RunConfig parse_config_json(const json& j) {
  check_keys(j, "config",
             {"problem", "case", "domain", "background", "foreground", "formulation", "solver",
              "level", "output_prefix", "windows"});
  RunConfig c;
  c.problem = get_str(j, "config", "problem", "poisson");
  if (c.problem != "poisson" && c.problem != "biharmonic" && c.problem != "elasticity")
    throw ConfigError("problem must be poisson, biharmonic, or elasticity");
  const std::string default_case = c.problem == "poisson"      ? "poisson_trig"
                                   : c.problem == "biharmonic" ? "biharmonic_trig"
                                                               : "hole_plate";
  c.case_name = get_str(j, "config", "case", default_case);
  const std::set<std::string> known_cases{"poisson_trig",    "poisson_linear", "poisson_quadratic",
                                          "biharmonic_trig", "biharmonic_linear",
                                          "biharmonic_quadratic", "hole_plate"};
  if (!known_cases.count(c.case_name))
    throw ConfigError("unknown case \"" + c.case_name + "\"");
  if (!j.contains("domain")) throw ConfigError("config requires a domain block");
  c.domain = parse_domain(j["domain"]);
  c.background = parse_background(j.contains("background") ? j["background"] : json::object());
  c.foreground = parse_foreground(j.contains("foreground") ? j["foreground"] : json::object());
  c.formulation = parse_formulation(j.contains("formulation") ? j["formulation"] : json::object(),
                                    c.problem);
  c.solver = parse_solver(j.contains("solver") ? j["solver"] : json::object());
  c.level = get_int(j, "config", "level", 0);
  if (c.level < 0) throw ConfigError("level must be nonnegative");
  c.output_prefix = get_str(j, "config", "output_prefix", "run");
  if (j.contains("windows")) {
    const auto& w = j["windows"];
    check_keys(w, "windows", {"rate_l2", "rate_h1", "rate_h2"});
    for (auto it = w.begin(); it != w.end(); ++it) {
      const auto& r = it.value();
      if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
        throw ConfigError("windows." + it.key() + " must be [lo, hi]");
      c.windows[it.key()] = {r[0].get<double>(), r[1].get<double>()};
    }
  }

  // cross-field checks that would otherwise surface deep in the pipeline
  if (c.foreground.kappa < 1 || c.foreground.kappa > 2)
    throw CapabilityError("unsupported foreground degree " +
                          std::to_string(c.foreground.kappa));
  if (c.problem == "biharmonic" && c.foreground.kappa != 2)
    throw CapabilityError("the fourth order problem needs foreground.kappa = 2");
  if (c.problem == "elasticity" && c.domain.kind != DomainKind::quadrant_with_hole)
    throw ConfigError("elasticity runs use the quadrant_with_hole domain");
  if (!c.foreground.fitted && c.domain.kind != DomainKind::rotated_square &&
      c.domain.kind != DomainKind::axis_square)
    throw CapabilityError("unfitted foregrounds are generated for the square domains only");
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
  return parse_config_json(j);
}

nlohmann::json effective_config(const RunConfig& c) {
  json j;
  j["problem"] = c.problem;
  j["case"] = c.case_name;
  json d;
  switch (c.domain.kind) {
    case DomainKind::rotated_square:
      d["kind"] = "rotated_square";
      d["center"] = {c.domain.center.x, c.domain.center.y};
      d["half_width"] = c.domain.half_width;
      d["angle"] = c.domain.angle;
      break;
    case DomainKind::axis_square:
      d["kind"] = "axis_square";
      d["center"] = {c.domain.center.x, c.domain.center.y};
      d["half_width"] = c.domain.half_width;
      break;
    case DomainKind::half_plane:
      d["kind"] = "half_plane";
      d["normal"] = {c.domain.normal.x, c.domain.normal.y};
      d["offset"] = c.domain.offset;
      break;
    case DomainKind::quadrant_with_hole:
      d["kind"] = "quadrant_with_hole";
      d["side"] = c.domain.side;
      d["hole_radius"] = c.domain.hole_radius;
      break;
  }
  j["domain"] = d;
  j["background"] = {
      {"kind", c.background.kind == BackgroundKind::bspline ? "bspline" : "lagrange"},
      {"degree", c.background.degree},
      {"box", {{c.background.box_lo.x, c.background.box_lo.y},
               {c.background.box_hi.x, c.background.box_hi.y}}},
      {"cells_level0", c.background.cells_level0}};
  j["foreground"] = {{"kappa", c.foreground.kappa},
                     {"fitted", c.foreground.fitted},
                     {"unfitted_eta_scale", c.foreground.unfitted_eta_scale},
                     {"refine_levels", c.foreground.refine_levels},
                     {"refine_marker", c.foreground.refine_marker},
                     {"sliver_rel_tol", c.foreground.sliver_rel_tol}};
  j["formulation"] = {
      {"variant", c.formulation.variant == NitscheVariant::symmetric ? "symmetric"
                                                                     : "nonsymmetric"},
      {"c_pen", c.formulation.c_pen},
      {"alpha", c.formulation.alpha},
      {"beta", c.formulation.beta},
      {"youngs", c.formulation.youngs},
      {"poisson_ratio", c.formulation.poisson_ratio},
      {"tension", c.formulation.tension}};
  j["solver"] = {{"method", c.solver.method == SolveMethod::direct ? "direct" : "iterative"},
                 {"tol", c.solver.tol}};
  j["level"] = c.level;
  j["output_prefix"] = c.output_prefix;
  if (!c.windows.empty()) {
    json w;
    for (const auto& [name, range] : c.windows) w[name] = {range[0], range[1]};
    j["windows"] = w;
  }
  return j;
}

GridDesc grid_for_level(const BackgroundConfig& bg, int level) {
  if (level < 0) throw ConfigError("level must be nonnegative");
  GridDesc g;
  g.origin = bg.box_lo;
  const long ncx = static_cast<long>(bg.cells_level0) << level;
  if (ncx > 1 << 20) throw ConfigError("grid too fine at level " + std::to_string(level));
  g.ncx = static_cast<int>(ncx);
  g.h = (bg.box_hi.x - bg.box_lo.x) / static_cast<double>(g.ncx);
  const double ny = (bg.box_hi.y - bg.box_lo.y) / g.h;
  g.ncy = static_cast<int>(std::lround(ny));
  if (std::fabs(ny - g.ncy) > 1e-9 || g.ncy < 1)
    throw ConfigError("background.box does not tile into square cells");
  return g;
}

}  // namespace ibfem
