#include "ibfem/background.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ibfem/errors.hpp"
#include "ibfem/foreground_shape.hpp"

namespace ibfem {

BackgroundSpace make_background_space(BackgroundKind kind, int degree, const GridDesc& grid) {
  if (degree != 1 && degree != 2)
    throw CapabilityError("unsupported background degree " + std::to_string(degree));
  if (grid.ncx < 1 || grid.ncy < 1 || !(grid.h > 0))
    throw ConfigError("background grid needs positive cell counts and spacing");
  BackgroundSpace s;
  s.kind = kind;
  s.degree = degree;
  s.grid = grid;
  if (kind == BackgroundKind::bspline) {
    s.kx = make_open_uniform_knots(degree, grid.ncx, grid.origin.x, grid.upper().x);
    s.ky = make_open_uniform_knots(degree, grid.ncy, grid.origin.y, grid.upper().y);
    s.n1x = s.kx.num_basis();
    s.n1y = s.ky.num_basis();
  } else {
    s.n1x = degree * grid.ncx + 1;
    s.n1y = degree * grid.ncy + 1;
  }
  return s;
}

namespace {

void check_inside(const BackgroundSpace& space, Vec2 p) {
  const double slack = 1e-12 * std::max(space.grid.width(), space.grid.height());
  if (!space.grid.contains(p, slack))
    throw GeometryError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                        ") lies outside the background grid");
}

void eval_bspline_2d(const BackgroundSpace& space, Vec2 p, int nder,
                     std::vector<BasisSample>& out) {
  const SplineBasis1D bx = eval_bspline_1d(space.kx, p.x, nder);
  const SplineBasis1D by = eval_bspline_1d(space.ky, p.y, nder);
  for (int jy = 0; jy < by.count; ++jy) {
    for (int jx = 0; jx < bx.count; ++jx) {
      BasisSample s;
      s.index = (by.first + jy) * space.n1x + (bx.first + jx);
      s.value = bx.val[jx] * by.val[jy];
      if (nder >= 1) s.grad = {bx.d1[jx] * by.val[jy], bx.val[jx] * by.d1[jy]};
      if (nder >= 2)
        s.hess = {bx.d2[jx] * by.val[jy], bx.d1[jx] * by.d1[jy], bx.val[jx] * by.d2[jy]};
      out.push_back(s);
    }
  }
}

// structured triangulation: each cell split along its lower-left -> upper-right
// diagonal; nodes live on a lattice with spacing h/degree
void eval_lagrange_2d(const BackgroundSpace& space, Vec2 p, int nder,
                      std::vector<BasisSample>& out) {
  const GridDesc& g = space.grid;
  const int k = space.degree;
  int ci = static_cast<int>(std::floor((p.x - g.origin.x) / g.h));
  int cj = static_cast<int>(std::floor((p.y - g.origin.y) / g.h));
  ci = std::clamp(ci, 0, g.ncx - 1);
  cj = std::clamp(cj, 0, g.ncy - 1);
  const double xi = (p.x - g.origin.x) / g.h - ci;
  const double et = (p.y - g.origin.y) / g.h - cj;
  const bool lower = et <= xi;

  // reference coords and lattice indices of the element nodes
  double xr, yr;
  int lat[6][2];
  const int bx = k * ci, by = k * cj;
  if (lower) {  // vertices (0,0),(1,0),(1,1) of the cell
    yr = et;
    xr = xi - et;
    lat[0][0] = bx; lat[0][1] = by;
    lat[1][0] = bx + k; lat[1][1] = by;
    lat[2][0] = bx + k; lat[2][1] = by + k;
    if (k == 2) {
      lat[3][0] = bx + 1; lat[3][1] = by;
      lat[4][0] = bx + 2; lat[4][1] = by + 1;
      lat[5][0] = bx + 1; lat[5][1] = by + 1;
    }
  } else {  // vertices (0,0),(1,1),(0,1)
    xr = xi;
    yr = et - xi;
    lat[0][0] = bx; lat[0][1] = by;
    lat[1][0] = bx + k; lat[1][1] = by + k;
    lat[2][0] = bx; lat[2][1] = by + k;
    if (k == 2) {
      lat[3][0] = bx + 1; lat[3][1] = by + 1;
      lat[4][0] = bx + 1; lat[4][1] = by + 2;
      lat[5][0] = bx; lat[5][1] = by + 1;
    }
  }

  const ShapeEval se = eval_foreground_shape(k, xr, yr, nder);

  // affine map gradients/hessians to physical coordinates
  // lower: J = [(h,0),(h,h)] columns; upper: J = [(h,h),(0,h)] columns
  Mat2 jinv;
  const double ih = 1.0 / g.h;
  if (lower)
    jinv = {ih, -ih, 0, ih};  // J^{-1}
  else
    jinv = {ih, 0, -ih, ih};
  const Mat2 jinvT = jinv.transpose();

  for (int a = 0; a < se.count; ++a) {
    BasisSample s;
    s.index = lat[a][1] * space.n1x + lat[a][0];
    s.value = se.val[a];
    if (nder >= 1) s.grad = jinvT.apply(se.grad[a]);
    if (nder >= 2) {
      // H_phys = J^{-T} H_ref J^{-1}
      const Sym2& hr = se.hess[a];
      const Mat2 h{hr.xx, hr.xy, hr.xy, hr.yy};
      Mat2 tmp{jinvT.a * h.a + jinvT.b * h.c, jinvT.a * h.b + jinvT.b * h.d,
               jinvT.c * h.a + jinvT.d * h.c, jinvT.c * h.b + jinvT.d * h.d};
      Mat2 hp{tmp.a * jinv.a + tmp.b * jinv.c, tmp.a * jinv.b + tmp.b * jinv.d,
              tmp.c * jinv.a + tmp.d * jinv.c, tmp.c * jinv.b + tmp.d * jinv.d};
      s.hess = {hp.a, hp.b, hp.d};
    }
    out.push_back(s);
  }
}

}  // namespace

void eval_background_basis(const BackgroundSpace& space, Vec2 p, int nder,
                           std::vector<BasisSample>& out) {
  out.clear();
  check_inside(space, p);
  if (space.kind == BackgroundKind::bspline)
    eval_bspline_2d(space, p, nder, out);
  else
    eval_lagrange_2d(space, p, nder, out);
}

std::vector<Vec2> interpolation_points(const BackgroundSpace& space) {
  std::vector<double> gx, gy;
  if (space.kind == BackgroundKind::bspline) {
    gx = greville_abscissae(space.kx);
    gy = greville_abscissae(space.ky);
  } else {
    const double d = space.grid.h / space.degree;
    gx.resize(space.n1x);
    gy.resize(space.n1y);
    for (int i = 0; i < space.n1x; ++i) gx[i] = space.grid.origin.x + i * d;
    for (int j = 0; j < space.n1y; ++j) gy[j] = space.grid.origin.y + j * d;
  }
  std::vector<Vec2> pts;
  pts.reserve(space.dof_count());
  for (int j = 0; j < space.n1y; ++j)
    for (int i = 0; i < space.n1x; ++i) pts.push_back({gx[i], gy[j]});
  return pts;
}

namespace {

// dense 1D collocation matrix B(a,i) = basis_i(greville_a)
Eigen::MatrixXd collocation_1d(const KnotVector& kv) {
  const auto g = greville_abscissae(kv);
  const int n = kv.num_basis();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    const SplineBasis1D e = eval_bspline_1d(kv, g[a], 0);
    for (int j = 0; j < e.count; ++j) B(a, e.first + j) = e.val[j];
  }
  return B;
}

}  // namespace

std::vector<double> interpolate_onto_background(const BackgroundSpace& space,
                                                const std::function<double(Vec2)>& f) {
  const auto pts = interpolation_points(space);
  std::vector<double> d(space.dof_count());
  if (space.kind == BackgroundKind::lagrange) {
    for (int i = 0; i < space.dof_count(); ++i) d[i] = f(pts[i]);
    return d;
  }
  // tensor collocation R = By * D * Bx^T, solved one direction at a time
  Eigen::MatrixXd R(space.n1y, space.n1x);
  for (int j = 0; j < space.n1y; ++j)
    for (int i = 0; i < space.n1x; ++i) R(j, i) = f(pts[j * space.n1x + i]);
  Eigen::PartialPivLU<Eigen::MatrixXd> lux(collocation_1d(space.kx));
  Eigen::PartialPivLU<Eigen::MatrixXd> luy(collocation_1d(space.ky));
  Eigen::MatrixXd Z = luy.solve(R);
  Eigen::MatrixXd D = lux.solve(Z.transpose()).transpose();
  for (int j = 0; j < space.n1y; ++j)
    for (int i = 0; i < space.n1x; ++i) d[j * space.n1x + i] = D(j, i);
  return d;
}

}  // namespace ibfem
