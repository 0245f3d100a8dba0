#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ibfem/background.hpp"
#include "ibfem/errors.hpp"
#include "ibfem/knots.hpp"

using namespace ibfem;

namespace {

// deterministic pseudo-random coefficient per dof, for field-level checks
double coeff_of(int j) { return std::sin(0.7 * j + 0.3) + 0.25 * std::cos(1.3 * j); }

struct FieldEval {
  double val = 0;
  Vec2 grad;
  Sym2 hess;
};

FieldEval eval_field(const BackgroundSpace& space, Vec2 p, int nder) {
  std::vector<BasisSample> out;
  eval_background_basis(space, p, nder, out);
  FieldEval f;
  for (const auto& s : out) {
    const double c = coeff_of(s.index);
    f.val += c * s.value;
    f.grad = f.grad + c * s.grad;
    f.hess = f.hess + s.hess * c;
  }
  return f;
}

GridDesc unit_grid(int n) {
  GridDesc g;
  g.origin = {0, 0};
  g.h = 1.0 / n;
  g.ncx = n;
  g.ncy = n;
  return g;
}

// a point strictly inside the lower triangle of cell (i,j), away from every
// smoothness line so finite differences never straddle a derivative jump
Vec2 safe_point(const GridDesc& g, int i, int j, double u, double v) {
  return {g.origin.x + g.h * (i + 0.55 + 0.25 * u), g.origin.y + g.h * (j + 0.15 + 0.25 * v)};
}

}  // namespace

TEST_CASE("open uniform knot vectors have the advertised shape") {
  const KnotVector kv = make_open_uniform_knots(2, 4, 0.0, 1.0);
  CHECK(kv.num_basis() == 6);
  CHECK(kv.num_spans() == 4);
  CHECK(kv.knots.size() == 9);
  // first/last repeated degree+1 times, interior uniform
  for (int i = 0; i < 3; ++i) {
    CHECK(kv.knots[i] == 0.0);
    CHECK(kv.knots[6 + i] == 1.0);
  }
  CHECK(kv.knots[3] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(kv.knots[4] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(kv.knots[5] == doctest::Approx(0.75).epsilon(1e-15));

  CHECK_THROWS_AS(make_open_uniform_knots(5, 4, 0.0, 1.0), ConfigError);
}

TEST_CASE("find_span brackets its argument and owns the right endpoint") {
  const KnotVector kv = make_open_uniform_knots(2, 5, -1.0, 1.0);
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const double x = U(rng);
    const int s = find_span(kv, x);
    CHECK(kv.knots[s] <= x);
    CHECK(x <= kv.knots[s + 1]);
  }
  const int last = find_span(kv, 1.0);
  CHECK(kv.knots[last] < 1.0);  // x = b belongs to the final nonempty span
  CHECK(kv.knots[last + 1] == 1.0);
}

TEST_CASE("1d bspline basis: partition of unity and hat values") {
  for (int degree : {1, 2, 3, 4}) {
    const KnotVector kv = make_open_uniform_knots(degree, 6, 0.0, 3.0);
    std::mt19937 rng(7 + degree);
    std::uniform_real_distribution<double> U(0.0, 3.0);
    for (int t = 0; t < 500; ++t) {
      const SplineBasis1D b = eval_bspline_1d(kv, U(rng), 2);
      CHECK(b.count == degree + 1);
      double sv = 0, sd = 0;
      for (int i = 0; i < b.count; ++i) {
        sv += b.val[i];
        sd += b.d1[i];
      }
      CHECK(std::fabs(sv - 1.0) <= 1e-14);
      CHECK(std::fabs(sd) <= 1e-11);
    }
  }
  // degree-1 basis is the nodal hat: value 1 at its own node
  const KnotVector kv = make_open_uniform_knots(1, 4, 0.0, 1.0);
  const SplineBasis1D b = eval_bspline_1d(kv, 0.5, 0);
  bool saw_one = false;
  for (int i = 0; i < b.count; ++i)
    if (std::fabs(b.val[i] - 1.0) <= 1e-14) saw_one = true;
  CHECK(saw_one);
}

TEST_CASE("greville abscissae are knot averages, one per basis function") {
  const KnotVector kv = make_open_uniform_knots(2, 4, 0.0, 1.0);
  const std::vector<double> g = greville_abscissae(kv);
  REQUIRE(g.size() == 6);
  const double expect[6] = {0.0, 0.125, 0.375, 0.625, 0.875, 1.0};
  for (int i = 0; i < 6; ++i) CHECK(g[i] == doctest::Approx(expect[i]).epsilon(1e-14));

  // degree 1: greville points are the grid nodes themselves
  const KnotVector kv1 = make_open_uniform_knots(1, 4, 0.0, 1.0);
  const std::vector<double> g1 = greville_abscissae(kv1);
  REQUIRE(g1.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(g1[i] == doctest::Approx(0.25 * i).epsilon(1e-14));
}

TEST_CASE("background space shape and dof ordering") {
  const GridDesc grid = unit_grid(4);
  SUBCASE("bspline dof counts") {
    for (int k : {1, 2}) {
      const BackgroundSpace s = make_background_space(BackgroundKind::bspline, k, grid);
      CHECK(s.n1x == 4 + k);
      CHECK(s.dof_count() == (4 + k) * (4 + k));
    }
  }
  SUBCASE("lagrange dof counts") {
    for (int k : {1, 2}) {
      const BackgroundSpace s = make_background_space(BackgroundKind::lagrange, k, grid);
      CHECK(s.n1x == 4 * k + 1);
      CHECK(s.dof_count() == (4 * k + 1) * (4 * k + 1));
    }
  }
  SUBCASE("unsupported degree is rejected") {
    CHECK_THROWS_AS(make_background_space(BackgroundKind::bspline, 3, grid), CapabilityError);
  }
  SUBCASE("interpolation points follow dof order, x fastest") {
    const BackgroundSpace s = make_background_space(BackgroundKind::bspline, 1, grid);
    const std::vector<Vec2> pts = interpolation_points(s);
    REQUIRE(static_cast<int>(pts.size()) == s.dof_count());
    // degree-1 greville grid is the cell-corner lattice
    for (int j = 0; j < s.n1y; ++j)
      for (int i = 0; i < s.n1x; ++i) {
        const Vec2 p = pts[j * s.n1x + i];
        CHECK(p.x == doctest::Approx(grid.h * i).epsilon(1e-14));
        CHECK(p.y == doctest::Approx(grid.h * j).epsilon(1e-14));
      }
  }
}

TEST_CASE("partition of unity at 1e4 random interior points, all space kinds") {
  const GridDesc grid = unit_grid(5);
  for (BackgroundKind kind : {BackgroundKind::bspline, BackgroundKind::lagrange}) {
    for (int degree : {1, 2}) {
      const BackgroundSpace s = make_background_space(kind, degree, grid);
      std::mt19937 rng(1234);
      std::uniform_real_distribution<double> U(1e-9, 1.0 - 1e-9);
      double worst_v = 0, worst_g = 0;
      for (int t = 0; t < 10000; ++t) {
        const Vec2 p{U(rng), U(rng)};
        std::vector<BasisSample> out;
        eval_background_basis(s, p, 1, out);
        double sv = 0;
        Vec2 sg;
        for (const auto& b : out) {
          sv += b.value;
          sg = sg + b.grad;
        }
        worst_v = std::max(worst_v, std::fabs(sv - 1.0));
        worst_g = std::max(worst_g, sg.norm());
      }
      CHECK(worst_v <= 1e-12);
      CHECK(worst_g <= 1e-10);
    }
  }
}

TEST_CASE("lagrange background basis is nodal on its lattice") {
  const GridDesc grid = unit_grid(3);
  for (int degree : {1, 2}) {
    const BackgroundSpace s = make_background_space(BackgroundKind::lagrange, degree, grid);
    const std::vector<Vec2> pts = interpolation_points(s);
    for (int i = 0; i < s.dof_count(); ++i) {
      std::vector<BasisSample> out;
      eval_background_basis(s, pts[i], 0, out);
      double self = 0, other = 0;
      for (const auto& b : out)
        (b.index == i ? self : other) = std::max(b.index == i ? self : other, std::fabs(b.value));
      for (const auto& b : out)
        if (b.index != i) other = std::max(other, std::fabs(b.value));
      CHECK(std::fabs(self - 1.0) <= 1e-12);
      CHECK(other <= 1e-12);
    }
  }
}

TEST_CASE("basis gradients and hessians match finite differences of the field") {
  const GridDesc grid = unit_grid(6);
  const double e = 1e-6;
  for (BackgroundKind kind : {BackgroundKind::bspline, BackgroundKind::lagrange}) {
    for (int degree : {1, 2}) {
      const BackgroundSpace s = make_background_space(kind, degree, grid);
      std::mt19937 rng(99);
      std::uniform_real_distribution<double> U(0.0, 1.0);
      for (int t = 0; t < 60; ++t) {
        const int ci = t % grid.ncx, cj = (t / grid.ncx) % grid.ncy;
        const Vec2 p = safe_point(grid, ci, cj, U(rng), U(rng));
        const FieldEval f = eval_field(s, p, 2);
        const FieldEval fxp = eval_field(s, {p.x + e, p.y}, 1);
        const FieldEval fxm = eval_field(s, {p.x - e, p.y}, 1);
        const FieldEval fyp = eval_field(s, {p.x, p.y + e}, 1);
        const FieldEval fym = eval_field(s, {p.x, p.y - e}, 1);
        const double scale = std::max(1.0, std::fabs(f.val));
        CHECK(std::fabs((fxp.val - fxm.val) / (2 * e) - f.grad.x) / scale <= 1e-5);
        CHECK(std::fabs((fyp.val - fym.val) / (2 * e) - f.grad.y) / scale <= 1e-5);
        // hessian against central differences of the analytic gradient
        const double gscale = std::max(1.0, f.grad.norm());
        CHECK(std::fabs((fxp.grad.x - fxm.grad.x) / (2 * e) - f.hess.xx) / gscale <= 1e-4);
        CHECK(std::fabs((fxp.grad.y - fxm.grad.y) / (2 * e) - f.hess.xy) / gscale <= 1e-4);
        CHECK(std::fabs((fyp.grad.y - fym.grad.y) / (2 * e) - f.hess.yy) / gscale <= 1e-4);
      }
    }
  }
}

TEST_CASE("nodal interpolation onto the background reproduces polynomials of the space degree") {
  const GridDesc grid = unit_grid(4);
  for (BackgroundKind kind : {BackgroundKind::bspline, BackgroundKind::lagrange}) {
    for (int degree : {1, 2}) {
      const BackgroundSpace s = make_background_space(kind, degree, grid);
      // total degree <= space degree
      auto poly = [degree](Vec2 p) {
        return degree == 1 ? 0.5 - 1.5 * p.x + 2.0 * p.y
                           : 0.5 - 1.5 * p.x + 2.0 * p.y + p.x * p.x - p.x * p.y + 0.5 * p.y * p.y;
      };
      const std::vector<double> d = interpolate_onto_background(s, poly);
      std::mt19937 rng(5);
      std::uniform_real_distribution<double> U(0.0, 1.0);
      double worst = 0;
      for (int t = 0; t < 300; ++t) {
        const Vec2 p{U(rng), U(rng)};
        std::vector<BasisSample> out;
        eval_background_basis(s, p, 0, out);
        double v = 0;
        for (const auto& b : out) v += d[b.index] * b.value;
        worst = std::max(worst, std::fabs(v - poly(p)));
      }
      CHECK(worst <= 1e-12);
    }
  }
}
