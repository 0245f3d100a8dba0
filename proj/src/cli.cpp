#include "ibfem/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ibfem/errors.hpp"
#include "ibfem/mesh_io.hpp"
#include "ibfem/mmio.hpp"
#include "ibfem/study.hpp"

namespace ibfem {

namespace {

namespace fs = std::filesystem;

std::string out_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir);
}

std::vector<double> vertex_field(const CaseResult& res, int block) {
  const std::vector<int> node_of = vertex_nodes(res.mesh, res.dofmap);
  std::vector<double> field(res.mesh.num_vertices(), 0.0);
  for (int v = 0; v < res.mesh.num_vertices(); ++v) {
    const int n = node_of[v];
    if (n < 0) continue;
    field[v] = (block == 1) ? res.coeffs[n]
                            : std::hypot(res.coeffs[2 * n], res.coeffs[2 * n + 1]);
  }
  return field;
}

void write_run_report(const std::string& path, const RunConfig& cfg, const CaseResult& res,
                      long seed) {
  nlohmann::json j;
  j["config"] = effective_config(cfg);
  j["seed"] = seed;
  j["summary"] = {{"level", res.summary.level},
                  {"h", res.summary.h},
                  {"eta", res.summary.eta},
                  {"n_background", res.summary.n_background},
                  {"nu_foreground", res.summary.nu_foreground},
                  {"err_l2", res.summary.err_l2},
                  {"err_h1", res.summary.err_h1},
                  {"err_h2", res.summary.has_h2 ? nlohmann::json(res.summary.err_h2)
                                                : nlohmann::json()},
                  {"solver", {{"method", res.summary.solve.method},
                              {"iterations", res.summary.solve.iterations},
                              {"rel_residual", res.summary.solve.rel_residual},
                              {"converged", res.summary.solve.converged},
                              {"neg_pivots", res.summary.solve.neg_pivots},
                              {"rank_deficiency", res.summary.solve.rank_deficiency}}}};
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  out << j.dump(1) << '\n';
}

int parse_levels(const std::string& spec, int& lo, int& hi) {
  const auto pos = spec.find("..");
  if (pos == std::string::npos) return 1;
  try {
    lo = std::stoi(spec.substr(0, pos));
    hi = std::stoi(spec.substr(pos + 2));
  } catch (const std::exception&) {
    return 1;
  }
  return 0;
}

int run_command(const std::string& config_path, const std::string& out_dir, long seed,
                Exec exec) {
  const RunConfig cfg = parse_config_file(config_path);
  ensure_dir(out_dir);
  const CaseResult res = run_case(cfg, cfg.level, exec);
  const int block = (cfg.problem == "elasticity") ? 2 : 1;
  write_run_report(out_path(out_dir, cfg.output_prefix + "_report.json"), cfg, res, seed);
  const std::vector<double> field = vertex_field(res, block);
  write_vtk(out_path(out_dir, cfg.output_prefix + "_solution.vtk"), res.mesh, &field, "u");
  std::printf("level %d: %d background dofs, %d foreground nodes, errL2 %.3e\n",
              res.summary.level, res.summary.n_background, res.summary.nu_foreground,
              res.summary.err_l2);
  return 0;
}

int study_command(const std::string& config_path, const std::string& out_dir,
                  const std::string& levels, Exec exec) {
  const RunConfig cfg = parse_config_file(config_path);
  int lo = 0, hi = 0;
  if (parse_levels(levels, lo, hi) != 0)
    throw ConfigError("--levels expects a range like 2..6");
  ensure_dir(out_dir);
  const ConvergenceReport rep = convergence_study(cfg, lo, hi, exec);
  {
    std::ofstream csv(out_path(out_dir, cfg.output_prefix + "_study.csv"));
    if (!csv) throw ConfigError("cannot write the study csv");
    csv << study_csv(rep);
  }
  {
    std::ofstream js(out_path(out_dir, cfg.output_prefix + "_report.json"));
    if (!js) throw ConfigError("cannot write the study report");
    js << study_json(cfg, rep).dump(1) << '\n';
  }
  for (size_t i = 0; i < rep.levels.size(); ++i) {
    const auto& L = rep.levels[i];
    std::printf("level %d: h %.4e errL2 %.6e rateL2 %s\n", L.level, L.h, L.err_l2,
                std::isnan(rep.rate_l2[i]) ? "-" : format_g17(rep.rate_l2[i]).c_str());
  }
  std::printf("fitted rates: L2 %.3f H1 %.3f", rep.fit_rate_l2, rep.fit_rate_h1);
  if (rep.levels.back().has_h2) std::printf(" H2 %.3f", rep.fit_rate_h2);
  std::printf("\n");
  const std::vector<std::string> failed = check_windows(cfg, rep);
  if (!failed.empty()) {
    for (const auto& name : failed) std::fprintf(stderr, "rate window failed: %s\n", name.c_str());
    return 4;
  }
  return 0;
}

int export_command(const std::string& config_path, const std::string& out_dir,
                   const std::string& what, Exec exec) {
  const RunConfig cfg = parse_config_file(config_path);
  ensure_dir(out_dir);
  const CaseResult res = run_case(cfg, cfg.level, exec);
  bool any = false;
  std::string token;
  std::istringstream items(what);
  while (std::getline(items, token, ',')) {
    if (token == "mesh") {
      write_vtk(out_path(out_dir, cfg.output_prefix + "_mesh.vtk"), res.mesh);
      write_mesh_json(out_path(out_dir, cfg.output_prefix + "_mesh.json"), res.mesh);
    } else if (token == "extraction") {
      write_matrix_market(out_path(out_dir, cfg.output_prefix + "_extraction.mtx"),
                          res.extraction.mat);
    } else if (token == "system") {
      write_matrix_market(out_path(out_dir, cfg.output_prefix + "_system.mtx"), res.system);
      write_vector_market(out_path(out_dir, cfg.output_prefix + "_rhs.mtx"), res.rhs);
    } else {
      throw ConfigError("--what items must be mesh, extraction, or system");
    }
    any = true;
  }
  if (!any) throw ConfigError("--what selected nothing to export");
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"interpolation-based immersed finite element toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", levels, what = "mesh,extraction,system";
  long seed = 0;  // reserved; the pipeline itself is deterministic
  std::string exec_name = "parallel";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "seed echoed into reports");
    sub->add_option("--exec", exec_name, "serial or parallel kernels")
        ->check(CLI::IsMember({"serial", "parallel"}));
  };
  CLI::App* run = app.add_subcommand("run", "solve one level and write reports");
  add_common(run);
  CLI::App* study = app.add_subcommand("study", "mesh refinement study over a level range");
  add_common(study);
  study->add_option("--levels", levels, "level range, e.g. 2..6")->required();
  CLI::App* exp = app.add_subcommand("export", "write mesh/extraction/system artifacts");
  add_common(exp);
  exp->add_option("--what", what, "comma list: mesh,extraction,system");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const Exec exec = (exec_name == "serial") ? Exec::serial : Exec::parallel;
  try {
    if (run->parsed()) return run_command(config_path, out_dir, seed, exec);
    if (study->parsed()) return study_command(config_path, out_dir, levels, exec);
    if (exp->parsed()) return export_command(config_path, out_dir, what, exec);
    return 1;
  } catch (const CapabilityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const GeometryError& e) {
    std::fprintf(stderr, "geometry error: %s\n", e.what());
    return 2;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace ibfem
