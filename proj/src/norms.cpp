#include "ibfem/norms.hpp"

#include <cmath>

#include "ibfem/errors.hpp"
#include "ibfem/foreground_shape.hpp"
#include "ibfem/quadrature.hpp"

namespace ibfem {

namespace {

struct TriGeom {
  Vec2 v0;
  Mat2 jac;
  Mat2 jinv;
  Mat2 jinv_t;
  double absdet = 0;
};

TriGeom tri_geometry(const ForegroundMesh& mesh, int t) {
  const auto& tri = mesh.tris[t];
  const Vec2 a = mesh.vertices[tri[0]];
  const Vec2 b = mesh.vertices[tri[1]];
  const Vec2 c = mesh.vertices[tri[2]];
  TriGeom g;
  g.v0 = a;
  g.jac = {b.x - a.x, c.x - a.x, b.y - a.y, c.y - a.y};
  g.absdet = std::fabs(g.jac.det());
  g.jinv = g.jac.inverse();
  g.jinv_t = g.jinv.transpose();
  return g;
}

Sym2 congruence(const Mat2& g, const Sym2& h) {
  const double v1x = h.xx * g.a + h.xy * g.c;
  const double v1y = h.xy * g.a + h.yy * g.c;
  const double v2x = h.xx * g.b + h.xy * g.d;
  const double v2y = h.xy * g.b + h.yy * g.d;
  return {g.a * v1x + g.c * v1y, g.a * v2x + g.c * v2y, g.b * v2x + g.d * v2y};
}

}  // namespace

ErrorNorms error_norms(const ForegroundMesh& mesh, const LagrangeDofMap& dofmap,
                       const std::vector<double>& coeffs, const ScalarField& u,
                       const VectorField& grad_u, const HessField& hess_u, Exec exec) {
  if (static_cast<int>(coeffs.size()) != dofmap.num_nodes())
    throw ConfigError("coefficient vector length does not match the node count");
  const int kappa = dofmap.kappa;
  const int npe = dofmap.nodes_per_element;
  const bool want_h2 = static_cast<bool>(hess_u);
  const QuadratureRule vol = gauss_triangle(2 * kappa + 2);

  const int ntris = mesh.num_tris();
  std::vector<double> part_l2(ntris, 0.0), part_h1(ntris, 0.0), part_h2(ntris, 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int t = 0; t < ntris; ++t) {
    const TriGeom g = tri_geometry(mesh, t);
    for (size_t q = 0; q < vol.points.size(); ++q) {
      const Vec2 rq = vol.points[q];
      const double w = vol.weights[q] * g.absdet;
      const ShapeEval se = eval_foreground_shape(kappa, rq.x, rq.y, want_h2 ? 2 : 1);
      const Vec2 x = g.v0 + g.jac.apply(rq);
      double uh = 0;
      Vec2 gh;
      Sym2 hh;
      for (int a = 0; a < npe; ++a) {
        const double c = coeffs[dofmap.element_nodes[t][a]];
        uh += c * se.val[a];
        const Vec2 ga = g.jinv_t.apply(se.grad[a]);
        gh.x += c * ga.x;
        gh.y += c * ga.y;
        if (want_h2) {
          const Sym2 ha = congruence(g.jinv, se.hess[a]);
          hh = hh + ha * c;
        }
      }
      const double du = uh - u(x);
      const Vec2 dg = gh - grad_u(x);
      part_l2[t] += w * du * du;
      part_h1[t] += w * dg.dot(dg);
      if (want_h2) {
        const Sym2 dh = hh - hess_u(x);
        part_h2[t] += w * dh.frob2();
      }
    }
  }

  ErrorNorms e;
  e.has_h2 = want_h2;
  double sl2 = 0, sh1 = 0, sh2 = 0;
  for (int t = 0; t < ntris; ++t) {
    sl2 += part_l2[t];
    sh1 += part_h1[t];
    sh2 += part_h2[t];
  }
  e.l2 = std::sqrt(sl2);
  e.h1 = std::sqrt(sh1);
  // full broken H2 norm, not just the second-derivative seminorm
  e.h2 = want_h2 ? std::sqrt(sl2 + sh1 + sh2) : 0.0;
  return e;
}

StressError stress_error_l2(const ForegroundMesh& mesh, const LagrangeDofMap& dofmap,
                            const std::vector<double>& disp, double youngs, double poisson,
                            const HessField& stress_exact, Exec exec) {
  if (static_cast<int>(disp.size()) != 2 * dofmap.num_nodes())
    throw ConfigError("displacement vector length does not match twice the node count");
  const int kappa = dofmap.kappa;
  const int npe = dofmap.nodes_per_element;
  const LameConstants lc = plane_strain_constants(youngs, poisson);
  const QuadratureRule vol = gauss_triangle(2 * kappa + 2);

  const int ntris = mesh.num_tris();
  std::vector<double> part_err(ntris, 0.0), part_ref(ntris, 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int t = 0; t < ntris; ++t) {
    const TriGeom g = tri_geometry(mesh, t);
    for (size_t q = 0; q < vol.points.size(); ++q) {
      const Vec2 rq = vol.points[q];
      const double w = vol.weights[q] * g.absdet;
      const ShapeEval se = eval_foreground_shape(kappa, rq.x, rq.y, 1);
      const Vec2 x = g.v0 + g.jac.apply(rq);
      double ux_x = 0, ux_y = 0, uy_x = 0, uy_y = 0;
      for (int a = 0; a < npe; ++a) {
        const int node = dofmap.element_nodes[t][a];
        const Vec2 ga = g.jinv_t.apply(se.grad[a]);
        ux_x += disp[2 * node] * ga.x;
        ux_y += disp[2 * node] * ga.y;
        uy_x += disp[2 * node + 1] * ga.x;
        uy_y += disp[2 * node + 1] * ga.y;
      }
      const Sym2 eps{ux_x, 0.5 * (ux_y + uy_x), uy_y};
      const double tr = eps.trace();
      const Sym2 sh{2.0 * lc.mu * eps.xx + lc.lambda * tr, 2.0 * lc.mu * eps.xy,
                    2.0 * lc.mu * eps.yy + lc.lambda * tr};
      const Sym2 sx = stress_exact(x);
      part_err[t] += w * (sh - sx).frob2();
      part_ref[t] += w * sx.frob2();
    }
  }

  double serr = 0, sref = 0;
  for (int t = 0; t < ntris; ++t) {
    serr += part_err[t];
    sref += part_ref[t];
  }
  StressError se;
  se.abs = std::sqrt(serr);
  se.rel = (sref > 0) ? se.abs / std::sqrt(sref) : se.abs;
  return se;
}

}  // namespace ibfem
