#include "ibfem/cases.hpp"

#include <cmath>

namespace ibfem {

namespace {
constexpr double pi = 3.14159265358979323846;
}

ManufacturedCase poisson_trig_case() {
  // u = sin(pi r2) cos(pi (x-y)) with r2 = x^2 + y^2
  auto parts = [](Vec2 p, double& s, double& c, double& C, double& S) {
    const double r2 = p.x * p.x + p.y * p.y;
    s = std::sin(pi * r2);
    c = std::cos(pi * r2);
    C = std::cos(pi * (p.x - p.y));
    S = std::sin(pi * (p.x - p.y));
  };
  ManufacturedCase mc;
  mc.u = [parts](Vec2 p) {
    double s, c, C, S;
    parts(p, s, c, C, S);
    return s * C;
  };
  mc.grad_u = [parts](Vec2 p) {
    double s, c, C, S;
    parts(p, s, c, C, S);
    return Vec2{2.0 * pi * p.x * c * C - pi * s * S, 2.0 * pi * p.y * c * C + pi * s * S};
  };
  mc.hess_u = [parts](Vec2 p) {
    double s, c, C, S;
    parts(p, s, c, C, S);
    const double pi2 = pi * pi;
    Sym2 h;
    h.xx = 2.0 * pi * c * C - 4.0 * pi2 * p.x * p.x * s * C - 4.0 * pi2 * p.x * c * S -
           pi2 * s * C;
    h.yy = 2.0 * pi * c * C - 4.0 * pi2 * p.y * p.y * s * C + 4.0 * pi2 * p.y * c * S -
           pi2 * s * C;
    h.xy = -4.0 * pi2 * p.x * p.y * s * C + 2.0 * pi2 * (p.x - p.y) * c * S + pi2 * s * C;
    return h;
  };
  mc.f = [parts](Vec2 p) {
    double s, c, C, S;
    parts(p, s, c, C, S);
    const double r2 = p.x * p.x + p.y * p.y;
    return -4.0 * pi * c * C + 4.0 * pi * pi * r2 * s * C + 4.0 * pi * pi * (p.x - p.y) * c * S +
           2.0 * pi * pi * s * C;
  };
  return mc;
}

ManufacturedCase poisson_linear_case() {
  ManufacturedCase mc;
  mc.u = [](Vec2 p) { return 1.0 + p.x + 2.0 * p.y; };
  mc.grad_u = [](Vec2) { return Vec2{1.0, 2.0}; };
  mc.hess_u = [](Vec2) { return Sym2{}; };
  mc.f = [](Vec2) { return 0.0; };
  return mc;
}

ManufacturedCase poisson_quadratic_case() {
  ManufacturedCase mc;
  mc.u = [](Vec2 p) { return p.x * p.x + p.x * p.y + p.y * p.y; };
  mc.grad_u = [](Vec2 p) { return Vec2{2.0 * p.x + p.y, p.x + 2.0 * p.y}; };
  mc.hess_u = [](Vec2) { return Sym2{2.0, 1.0, 2.0}; };
  mc.f = [](Vec2) { return -4.0; };
  return mc;
}

ManufacturedCase biharmonic_trig_case() {
  const double a = 0.05 * pi;
  const double b0 = 0.1;
  ManufacturedCase mc;
  mc.u = [a, b0](Vec2 p) { return std::cos(a * p.x + b0) * std::cos(a * p.y + b0); };
  mc.grad_u = [a, b0](Vec2 p) {
    return Vec2{-a * std::sin(a * p.x + b0) * std::cos(a * p.y + b0),
                -a * std::cos(a * p.x + b0) * std::sin(a * p.y + b0)};
  };
  mc.hess_u = [a, b0](Vec2 p) {
    const double u = std::cos(a * p.x + b0) * std::cos(a * p.y + b0);
    return Sym2{-a * a * u, a * a * std::sin(a * p.x + b0) * std::sin(a * p.y + b0), -a * a * u};
  };
  // forcing for the squared laplacian: lap u = -2 a^2 u, lap lap u = 4 a^4 u
  mc.f = [a, b0](Vec2 p) {
    return 4.0 * a * a * a * a * std::cos(a * p.x + b0) * std::cos(a * p.y + b0);
  };
  return mc;
}

ManufacturedCase biharmonic_linear_case() {
  ManufacturedCase mc;
  mc.u = [](Vec2 p) { return 1.0 + p.x + p.y; };
  mc.grad_u = [](Vec2) { return Vec2{1.0, 1.0}; };
  mc.hess_u = [](Vec2) { return Sym2{}; };
  mc.f = [](Vec2) { return 0.0; };
  return mc;
}

ManufacturedCase biharmonic_quadratic_case() {
  ManufacturedCase mc;
  mc.u = [](Vec2 p) { return p.x * p.x + p.x * p.y + p.y * p.y; };
  mc.grad_u = [](Vec2 p) { return Vec2{2.0 * p.x + p.y, p.x + 2.0 * p.y}; };
  mc.hess_u = [](Vec2) { return Sym2{2.0, 1.0, 2.0}; };
  mc.f = [](Vec2) { return 0.0; };
  return mc;
}

HolePlateCase hole_plate_case(double radius, double youngs, double poisson, double tension) {
  const LameConstants lc = plane_strain_constants(youngs, poisson);
  const double a2 = radius * radius;
  const double T = tension;
  HolePlateCase hc;
  hc.radius = radius;
  hc.tension = T;
  hc.stress = [a2, T](Vec2 p) {
    const double r2 = p.x * p.x + p.y * p.y;
    const double rho = a2 / r2;
    const double c2t = (p.x * p.x - p.y * p.y) / r2;
    const double s2t = 2.0 * p.x * p.y / r2;
    return Sym2{T * (1.0 - rho * c2t), -T * rho * s2t, T * (1.0 + rho * c2t)};
  };
  hc.displacement = [a2, T, lc](Vec2 p) {
    const double r2 = p.x * p.x + p.y * p.y;
    const double fac = T / (2.0 * (lc.lambda + lc.mu)) + T * a2 / (2.0 * lc.mu * r2);
    return Vec2{fac * p.x, fac * p.y};
  };
  hc.traction = [stress = hc.stress](Vec2 p, Vec2 n) {
    const Sym2 s = stress(p);
    return Vec2{s.xx * n.x + s.xy * n.y, s.xy * n.x + s.yy * n.y};
  };
  return hc;
}

LinearElasticCase linear_elastic_case(double ax, double by, double youngs, double poisson) {
  const LameConstants lc = plane_strain_constants(youngs, poisson);
  LinearElasticCase ec;
  ec.displacement = [ax, by](Vec2 p) { return Vec2{ax * p.x, by * p.y}; };
  const double tr = ax + by;
  const Sym2 sig{2.0 * lc.mu * ax + lc.lambda * tr, 0.0, 2.0 * lc.mu * by + lc.lambda * tr};
  ec.stress = [sig](Vec2) { return sig; };
  ec.traction = [sig](Vec2, Vec2 n) {
    return Vec2{sig.xx * n.x + sig.xy * n.y, sig.xy * n.x + sig.yy * n.y};
  };
  return ec;
}

}  // namespace ibfem
