#include "ibfem/forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ibfem/background.hpp"
#include "ibfem/errors.hpp"
#include "ibfem/foreground_shape.hpp"
#include "ibfem/quadrature.hpp"

namespace ibfem {

LameConstants plane_strain_constants(double youngs, double poisson) {
  if (youngs <= 0 || poisson <= -1.0 || poisson >= 0.5)
    throw ConfigError("elastic constants out of range");
  LameConstants lc;
  lc.lambda = youngs * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson));
  lc.mu = youngs / (2.0 * (1.0 + poisson));
  return lc;
}

namespace {

struct TriGeom {
  Vec2 v0;
  Mat2 jac;      // columns v1-v0, v2-v0
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

// g^T h g for symmetric h: pushes a reference hessian to physical coords
Sym2 congruence(const Mat2& g, const Sym2& h) {
  const double v1x = h.xx * g.a + h.xy * g.c;
  const double v1y = h.xy * g.a + h.yy * g.c;
  const double v2x = h.xx * g.b + h.xy * g.d;
  const double v2y = h.xy * g.b + h.yy * g.d;
  return {g.a * v1x + g.c * v1y, g.a * v2x + g.c * v2y, g.b * v2x + g.d * v2y};
}

constexpr int max_slot = 12;  // 6 nodes x 2 components

// per-element (or per-facet) contribution computed independently, merged in a
// fixed serial pass so assembly is bit-identical for any thread count
struct ElemSlot {
  int n = 0;
  std::array<int, max_slot> dofs = {};
  std::array<double, max_slot * max_slot> mat = {};
  std::array<double, max_slot> rhs = {};
};

void accumulate(const std::vector<ElemSlot>& slots, TripletBuffer& t, std::vector<double>& b) {
  for (const auto& s : slots) {
    for (int a = 0; a < s.n; ++a) {
      b[s.dofs[a]] += s.rhs[a];
      for (int c = 0; c < s.n; ++c) t.add(s.dofs[a], s.dofs[c], s.mat[a * max_slot + c]);
    }
  }
}

bool has_marker(const std::vector<int>& set, int m) {
  return std::find(set.begin(), set.end(), m) != set.end();
}

void require_penalty_scale(const FormParams& params, bool needed) {
  if (needed && params.h <= 0.0)
    throw ConfigError("penalty length scale h must be positive for weak boundary terms");
}

struct FacetFrame {
  Vec2 p0, p1;   // physical endpoints
  Vec2 r0, r1;   // reference endpoints in the parent triangle
  double len = 0;
};

FacetFrame facet_frame(const ForegroundMesh& mesh, const BoundaryFacet& fc) {
  static const Vec2 ref[3] = {{0, 0}, {1, 0}, {0, 1}};
  FacetFrame fr;
  const auto [p0, p1] = facet_points(mesh, fc);
  fr.p0 = p0;
  fr.p1 = p1;
  fr.r0 = ref[fc.edge];
  fr.r1 = ref[(fc.edge + 1) % 3];
  fr.len = (p1 - p0).norm();
  return fr;
}

}  // namespace

AssembledSystem assemble_poisson(const ForegroundMesh& mesh, const LagrangeDofMap& dofmap,
                                 const ScalarField& f, const ScalarField& dirichlet,
                                 const FormParams& params, Exec exec) {
  const int kappa = dofmap.kappa;
  const int npe = dofmap.nodes_per_element;
  const QuadratureRule vol = gauss_triangle(2 * kappa);
  const QuadratureRule seg = gauss_segment(2 * kappa + 2);
  const double sgn = (params.variant == NitscheVariant::symmetric) ? -1.0 : 1.0;
  bool any_dirichlet = false;
  for (const auto& fc : mesh.facets)
    if (has_marker(params.dirichlet_markers, fc.marker)) any_dirichlet = true;
  require_penalty_scale(params, any_dirichlet && params.c_pen != 0.0);
  const double pen = (params.c_pen != 0.0) ? params.c_pen / params.h : 0.0;

  const int ntris = mesh.num_tris();
  std::vector<ElemSlot> evol(ntris);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int t = 0; t < ntris; ++t) {
    const TriGeom g = tri_geometry(mesh, t);
    ElemSlot& s = evol[t];
    s.n = npe;
    for (int a = 0; a < npe; ++a) s.dofs[a] = dofmap.element_nodes[t][a];
    for (size_t q = 0; q < vol.points.size(); ++q) {
      const Vec2 rq = vol.points[q];
      const double w = vol.weights[q] * g.absdet;
      const ShapeEval se = eval_foreground_shape(kappa, rq.x, rq.y, 1);
      Vec2 grad[6];
      for (int a = 0; a < npe; ++a) grad[a] = g.jinv_t.apply(se.grad[a]);
      const Vec2 x = g.v0 + g.jac.apply(rq);
      const double fx = f(x);
      for (int a = 0; a < npe; ++a) {
        s.rhs[a] += w * fx * se.val[a];
        for (int b = 0; b < npe; ++b) s.mat[a * max_slot + b] += w * grad[a].dot(grad[b]);
      }
    }
  }

  const int nfac = static_cast<int>(mesh.facets.size());
  std::vector<ElemSlot> efac(nfac);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int fi = 0; fi < nfac; ++fi) {
    const BoundaryFacet& fc = mesh.facets[fi];
    if (!has_marker(params.dirichlet_markers, fc.marker)) continue;
    const TriGeom g = tri_geometry(mesh, fc.tri);
    const FacetFrame fr = facet_frame(mesh, fc);
    ElemSlot& s = efac[fi];
    s.n = npe;
    for (int a = 0; a < npe; ++a) s.dofs[a] = dofmap.element_nodes[fc.tri][a];
    for (size_t q = 0; q < seg.points.size(); ++q) {
      const double sq = seg.points[q].x;
      const double w = seg.weights[q] * fr.len;
      const Vec2 r = fr.r0 + sq * (fr.r1 - fr.r0);
      const Vec2 x = fr.p0 + sq * (fr.p1 - fr.p0);
      const ShapeEval se = eval_foreground_shape(kappa, r.x, r.y, 1);
      double dn[6];
      for (int a = 0; a < npe; ++a) dn[a] = g.jinv_t.apply(se.grad[a]).dot(fc.normal);
      const double gval = dirichlet(x);
      for (int a = 0; a < npe; ++a) {
        s.rhs[a] += w * (sgn * dn[a] * gval + pen * gval * se.val[a]);
        for (int b = 0; b < npe; ++b)
          s.mat[a * max_slot + b] +=
              w * (-dn[b] * se.val[a] + sgn * dn[a] * se.val[b] + pen * se.val[a] * se.val[b]);
      }
    }
  }

  AssembledSystem sys;
  sys.symmetric = (params.variant == NitscheVariant::symmetric);
  sys.block_size = 1;
  sys.B.assign(dofmap.num_nodes(), 0.0);
  TripletBuffer t;
  accumulate(evol, t, sys.B);
  accumulate(efac, t, sys.B);
  sys.A = csr_from_triplets(dofmap.num_nodes(), dofmap.num_nodes(), t);
  return sys;
}

AssembledSystem assemble_biharmonic(const ForegroundMesh& mesh, const LagrangeDofMap& dofmap,
                                    const ScalarField& f, const ScalarField& sigma,
                                    const VectorField& grad_sigma, const FormParams& params,
                                    Exec exec) {
  if (dofmap.kappa != 2)
    throw CapabilityError("fourth order form needs quadratic foreground elements");
  const int kappa = 2;
  const int npe = dofmap.nodes_per_element;
  const QuadratureRule vol = gauss_triangle(2 * kappa);
  const QuadratureRule seg = gauss_segment(2 * kappa + 2);
  bool any_dirichlet = false;
  for (const auto& fc : mesh.facets)
    if (has_marker(params.dirichlet_markers, fc.marker)) any_dirichlet = true;
  require_penalty_scale(params, any_dirichlet);
  const double h = params.h;
  const double pen_v = any_dirichlet ? params.alpha / (h * h * h) : 0.0;
  const double pen_s = any_dirichlet ? params.beta / h : 0.0;

  const int ntris = mesh.num_tris();
  std::vector<ElemSlot> evol(ntris);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int t = 0; t < ntris; ++t) {
    const TriGeom g = tri_geometry(mesh, t);
    ElemSlot& s = evol[t];
    s.n = npe;
    for (int a = 0; a < npe; ++a) s.dofs[a] = dofmap.element_nodes[t][a];
    for (size_t q = 0; q < vol.points.size(); ++q) {
      const Vec2 rq = vol.points[q];
      const double w = vol.weights[q] * g.absdet;
      const ShapeEval se = eval_foreground_shape(kappa, rq.x, rq.y, 2);
      double lap[6];
      for (int a = 0; a < npe; ++a) lap[a] = congruence(g.jinv, se.hess[a]).trace();
      const Vec2 x = g.v0 + g.jac.apply(rq);
      const double fx = f(x);
      for (int a = 0; a < npe; ++a) {
        s.rhs[a] += w * fx * se.val[a];
        for (int b = 0; b < npe; ++b) s.mat[a * max_slot + b] += w * lap[a] * lap[b];
      }
    }
  }

  // Gradients of element laplacians vanish for quadratics, so the clamped
  // consistency terms that would carry grad(lap) drop out of both sides.
  const int nfac = static_cast<int>(mesh.facets.size());
  std::vector<ElemSlot> efac(nfac);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int fi = 0; fi < nfac; ++fi) {
    const BoundaryFacet& fc = mesh.facets[fi];
    if (!has_marker(params.dirichlet_markers, fc.marker)) continue;
    const TriGeom g = tri_geometry(mesh, fc.tri);
    const FacetFrame fr = facet_frame(mesh, fc);
    ElemSlot& s = efac[fi];
    s.n = npe;
    for (int a = 0; a < npe; ++a) s.dofs[a] = dofmap.element_nodes[fc.tri][a];
    for (size_t q = 0; q < seg.points.size(); ++q) {
      const double sq = seg.points[q].x;
      const double w = seg.weights[q] * fr.len;
      const Vec2 r = fr.r0 + sq * (fr.r1 - fr.r0);
      const Vec2 x = fr.p0 + sq * (fr.p1 - fr.p0);
      const ShapeEval se = eval_foreground_shape(kappa, r.x, r.y, 2);
      double dn[6], lap[6];
      for (int a = 0; a < npe; ++a) {
        dn[a] = g.jinv_t.apply(se.grad[a]).dot(fc.normal);
        lap[a] = congruence(g.jinv, se.hess[a]).trace();
      }
      const double sv = sigma(x);
      const double sn = grad_sigma(x).dot(fc.normal);
      for (int a = 0; a < npe; ++a) {
        s.rhs[a] += w * (-lap[a] * sn + pen_v * sv * se.val[a] + pen_s * sn * dn[a]);
        for (int b = 0; b < npe; ++b)
          s.mat[a * max_slot + b] += w * (-lap[b] * dn[a] - lap[a] * dn[b] +
                                          pen_v * se.val[a] * se.val[b] + pen_s * dn[a] * dn[b]);
      }
    }
  }

  AssembledSystem sys;
  sys.symmetric = true;
  sys.block_size = 1;
  sys.B.assign(dofmap.num_nodes(), 0.0);
  TripletBuffer t;
  accumulate(evol, t, sys.B);
  accumulate(efac, t, sys.B);
  sys.A = csr_from_triplets(dofmap.num_nodes(), dofmap.num_nodes(), t);
  return sys;
}

AssembledSystem assemble_elasticity(const ForegroundMesh& mesh, const LagrangeDofMap& dofmap,
                                    const TractionField& traction, const FormParams& params,
                                    Exec exec) {
  const int kappa = dofmap.kappa;
  const int npe = dofmap.nodes_per_element;
  const LameConstants lc = plane_strain_constants(params.youngs, params.poisson);
  const QuadratureRule vol = gauss_triangle(2 * kappa);
  const QuadratureRule seg = gauss_segment(2 * kappa + 2);
  bool any_sym = false;
  for (const auto& fc : mesh.facets)
    if (has_marker(params.sym_markers, fc.marker)) any_sym = true;
  require_penalty_scale(params, any_sym);
  const double pen = any_sym ? params.beta * lc.mu / params.h : 0.0;

  const int ntris = mesh.num_tris();
  std::vector<ElemSlot> evol(ntris);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int t = 0; t < ntris; ++t) {
    const TriGeom g = tri_geometry(mesh, t);
    ElemSlot& s = evol[t];
    s.n = 2 * npe;
    for (int a = 0; a < npe; ++a) {
      s.dofs[2 * a] = 2 * dofmap.element_nodes[t][a];
      s.dofs[2 * a + 1] = 2 * dofmap.element_nodes[t][a] + 1;
    }
    for (size_t q = 0; q < vol.points.size(); ++q) {
      const Vec2 rq = vol.points[q];
      const double w = vol.weights[q] * g.absdet;
      const ShapeEval se = eval_foreground_shape(kappa, rq.x, rq.y, 1);
      Vec2 grad[6];
      for (int a = 0; a < npe; ++a) grad[a] = g.jinv_t.apply(se.grad[a]);
      for (int a = 0; a < npe; ++a) {
        for (int b = 0; b < npe; ++b) {
          const double gg = grad[a].dot(grad[b]);
          const double da[2] = {grad[a].x, grad[a].y};
          const double db[2] = {grad[b].x, grad[b].y};
          for (int al = 0; al < 2; ++al)
            for (int be = 0; be < 2; ++be) {
              const double kab = lc.mu * ((al == be ? gg : 0.0) + da[be] * db[al]) +
                                 lc.lambda * da[al] * db[be];
              s.mat[(2 * a + al) * max_slot + (2 * b + be)] += w * kab;
            }
        }
      }
    }
  }

  const int nfac = static_cast<int>(mesh.facets.size());
  std::vector<ElemSlot> efac(nfac);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int fi = 0; fi < nfac; ++fi) {
    const BoundaryFacet& fc = mesh.facets[fi];
    const bool is_sym = has_marker(params.sym_markers, fc.marker);
    const bool is_trac = has_marker(params.traction_markers, fc.marker);
    if (!is_sym && !is_trac) continue;
    const TriGeom g = tri_geometry(mesh, fc.tri);
    const FacetFrame fr = facet_frame(mesh, fc);
    ElemSlot& s = efac[fi];
    s.n = 2 * npe;
    for (int a = 0; a < npe; ++a) {
      s.dofs[2 * a] = 2 * dofmap.element_nodes[fc.tri][a];
      s.dofs[2 * a + 1] = 2 * dofmap.element_nodes[fc.tri][a] + 1;
    }
    const double nv[2] = {fc.normal.x, fc.normal.y};
    for (size_t q = 0; q < seg.points.size(); ++q) {
      const double sq = seg.points[q].x;
      const double w = seg.weights[q] * fr.len;
      const Vec2 r = fr.r0 + sq * (fr.r1 - fr.r0);
      const Vec2 x = fr.p0 + sq * (fr.p1 - fr.p0);
      const ShapeEval se = eval_foreground_shape(kappa, r.x, r.y, 1);
      if (is_trac) {
        const Vec2 tv = traction(x, fc.normal);
        const double tc[2] = {tv.x, tv.y};
        for (int a = 0; a < npe; ++a)
          for (int al = 0; al < 2; ++al) s.rhs[2 * a + al] += w * tc[al] * se.val[a];
      }
      if (is_sym) {
        // weak zero normal displacement: normal-normal stress consistency
        // terms plus a penalty on u.n
        Vec2 grad[6];
        for (int a = 0; a < npe; ++a) grad[a] = g.jinv_t.apply(se.grad[a]);
        for (int a = 0; a < npe; ++a) {
          const double dna = grad[a].dot(fc.normal);
          const double da[2] = {grad[a].x, grad[a].y};
          for (int b = 0; b < npe; ++b) {
            const double dnb = grad[b].dot(fc.normal);
            const double db[2] = {grad[b].x, grad[b].y};
            for (int al = 0; al < 2; ++al)
              for (int be = 0; be < 2; ++be) {
                const double nsn_a = 2.0 * lc.mu * nv[al] * dna + lc.lambda * da[al];
                const double nsn_b = 2.0 * lc.mu * nv[be] * dnb + lc.lambda * db[be];
                const double un_a = se.val[a] * nv[al];
                const double un_b = se.val[b] * nv[be];
                s.mat[(2 * a + al) * max_slot + (2 * b + be)] +=
                    w * (-un_b * nsn_a - un_a * nsn_b + pen * un_a * un_b);
              }
          }
        }
      }
    }
  }

  AssembledSystem sys;
  sys.symmetric = true;
  sys.block_size = 2;
  sys.B.assign(2 * dofmap.num_nodes(), 0.0);
  TripletBuffer t;
  accumulate(evol, t, sys.B);
  accumulate(efac, t, sys.B);
  sys.A = csr_from_triplets(2 * dofmap.num_nodes(), 2 * dofmap.num_nodes(), t);
  return sys;
}

AssembledSystem assemble_quadrature_reference_poisson(const BackgroundSpace& space,
                                                      const ForegroundMesh& mesh, int kappa,
                                                      const ScalarField& f,
                                                      const ScalarField& dirichlet,
                                                      const FormParams& params) {
  // background basis integrated directly on the foreground cells with the
  // same rules as the extracted route; serial reference
  const QuadratureRule vol = gauss_triangle(2 * kappa);
  const QuadratureRule seg = gauss_segment(2 * kappa + 2);
  const double sgn = (params.variant == NitscheVariant::symmetric) ? -1.0 : 1.0;
  bool any_dirichlet = false;
  for (const auto& fc : mesh.facets)
    if (has_marker(params.dirichlet_markers, fc.marker)) any_dirichlet = true;
  require_penalty_scale(params, any_dirichlet && params.c_pen != 0.0);
  const double pen = (params.c_pen != 0.0) ? params.c_pen / params.h : 0.0;

  const int ndof = space.dof_count();
  AssembledSystem sys;
  sys.symmetric = (params.variant == NitscheVariant::symmetric);
  sys.block_size = 1;
  sys.B.assign(ndof, 0.0);
  TripletBuffer t;
  std::vector<BasisSample> samples;

  for (int tr = 0; tr < mesh.num_tris(); ++tr) {
    const TriGeom g = tri_geometry(mesh, tr);
    for (size_t q = 0; q < vol.points.size(); ++q) {
      const double w = vol.weights[q] * g.absdet;
      const Vec2 x = g.v0 + g.jac.apply(vol.points[q]);
      eval_background_basis(space, x, 1, samples);
      const double fx = f(x);
      for (const auto& sa : samples) {
        sys.B[sa.index] += w * fx * sa.value;
        for (const auto& sb : samples)
          t.add(sa.index, sb.index, w * sa.grad.dot(sb.grad));
      }
    }
  }
  for (const auto& fc : mesh.facets) {
    if (!has_marker(params.dirichlet_markers, fc.marker)) continue;
    const FacetFrame fr = facet_frame(mesh, fc);
    for (size_t q = 0; q < seg.points.size(); ++q) {
      const double sq = seg.points[q].x;
      const double w = seg.weights[q] * fr.len;
      const Vec2 x = fr.p0 + sq * (fr.p1 - fr.p0);
      eval_background_basis(space, x, 1, samples);
      const double gval = dirichlet(x);
      for (const auto& sa : samples) {
        const double dna = sa.grad.dot(fc.normal);
        sys.B[sa.index] += w * (sgn * dna * gval + pen * gval * sa.value);
        for (const auto& sb : samples) {
          const double dnb = sb.grad.dot(fc.normal);
          t.add(sa.index, sb.index,
                w * (-dnb * sa.value + sgn * dna * sb.value + pen * sa.value * sb.value));
        }
      }
    }
  }
  sys.A = csr_from_triplets(ndof, ndof, t);
  return sys;
}

}  // namespace ibfem
