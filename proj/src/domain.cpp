#include "ibfem/domain.hpp"

#include <algorithm>
#include <cmath>

#include "ibfem/errors.hpp"

namespace ibfem {

namespace {

Vec2 to_frame(const DomainShape& d, Vec2 p) {
  const double c = std::cos(d.angle), s = std::sin(d.angle);
  const Vec2 q = p - d.center;
  return {c * q.x + s * q.y, -s * q.x + c * q.y};
}

Vec2 from_frame(const DomainShape& d, Vec2 q) {
  const double c = std::cos(d.angle), s = std::sin(d.angle);
  return {d.center.x + c * q.x - s * q.y, d.center.y + s * q.x + c * q.y};
}

}  // namespace

DomainShape make_rotated_square(Vec2 center, double half_width, double angle) {
  if (!(half_width > 0)) throw ConfigError("square half width must be positive");
  DomainShape d;
  d.kind = DomainKind::rotated_square;
  d.center = center;
  d.half_width = half_width;
  d.angle = angle;
  return d;
}

DomainShape make_axis_square(Vec2 center, double half_width) {
  DomainShape d = make_rotated_square(center, half_width, 0.0);
  d.kind = DomainKind::axis_square;
  return d;
}

DomainShape make_half_plane(Vec2 normal, double offset) {
  const double n = normal.norm();
  if (!(n > 0)) throw ConfigError("half-plane normal must be nonzero");
  DomainShape d;
  d.kind = DomainKind::half_plane;
  d.normal = normal * (1.0 / n);
  d.offset = offset / n;
  return d;
}

DomainShape make_quadrant_with_hole(double side, double hole_radius) {
  if (!(side > 0)) throw ConfigError("quadrant side must be positive");
  if (hole_radius < 0 || hole_radius >= side)
    throw ConfigError("hole radius must lie in [0, side)");
  DomainShape d;
  d.kind = DomainKind::quadrant_with_hole;
  d.side = side;
  d.hole_radius = hole_radius;
  return d;
}

double DomainShape::signed_distance(Vec2 p) const {
  switch (kind) {
    case DomainKind::rotated_square:
    case DomainKind::axis_square: {
      const Vec2 q = to_frame(*this, p);
      return std::max(std::fabs(q.x), std::fabs(q.y)) - half_width;
    }
    case DomainKind::half_plane:
      return normal.dot(p) - offset;
    case DomainKind::quadrant_with_hole: {
      const double dbox = std::max({p.x - side, -p.x, p.y - side, -p.y});
      if (hole_radius == 0.0) return dbox;
      return std::max(dbox, hole_radius - p.norm());
    }
  }
  return 0.0;
}

bool DomainShape::is_polygonal() const {
  return kind != DomainKind::quadrant_with_hole || hole_radius == 0.0;
}

double DomainShape::area() const {
  switch (kind) {
    case DomainKind::rotated_square:
    case DomainKind::axis_square:
      return 4.0 * half_width * half_width;
    case DomainKind::quadrant_with_hole:
      if (hole_radius == 0.0) return side * side;
      throw GeometryError("area of the holed quadrant is not polygonal-exact");
    case DomainKind::half_plane:
      throw GeometryError("half-plane has no finite area");
  }
  return 0.0;
}

void DomainShape::bounding_box(Vec2& lo, Vec2& hi) const {
  switch (kind) {
    case DomainKind::rotated_square:
    case DomainKind::axis_square: {
      const double c = std::fabs(std::cos(angle)), s = std::fabs(std::sin(angle));
      const double r = half_width * (c + s);
      lo = {center.x - r, center.y - r};
      hi = {center.x + r, center.y + r};
      return;
    }
    case DomainKind::quadrant_with_hole:
      lo = {0, 0};
      hi = {side, side};
      return;
    case DomainKind::half_plane:
      throw GeometryError("half-plane has no bounding box");
  }
}

double DomainShape::scale() const {
  switch (kind) {
    case DomainKind::rotated_square:
    case DomainKind::axis_square:
      return 2.0 * half_width;
    case DomainKind::half_plane:
      return 1.0;
    case DomainKind::quadrant_with_hole:
      return side;
  }
  return 1.0;
}

namespace {

struct Candidate {
  double t;
  Vec2 p;
};

// intersection of the segment with one frame-aligned square face
void face_candidates(Vec2 qa, Vec2 qb, double hw, std::vector<Candidate>& out) {
  const double eps = 1e-12 * std::max(1.0, hw);
  auto push = [&](double t) {
    if (t < -1e-12 || t > 1.0 + 1e-12) return;
    const Vec2 p{qa.x + t * (qb.x - qa.x), qa.y + t * (qb.y - qa.y)};
    if (std::fabs(p.x) <= hw + eps && std::fabs(p.y) <= hw + eps) out.push_back({t, p});
  };
  for (const double s : {-1.0, 1.0}) {
    if (qa.x != qb.x) push((s * hw - qa.x) / (qb.x - qa.x));
    if (qa.y != qb.y) push((s * hw - qa.y) / (qb.y - qa.y));
  }
}

// roots of |a + t d|^2 = r^2 inside [0,1], numerically stable form
void circle_candidates(Vec2 a, Vec2 d, double r, std::vector<double>& out) {
  const double A = d.dot(d);
  if (A == 0.0) return;
  const double B = 2.0 * a.dot(d);
  const double C = a.dot(a) - r * r;
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (B + (B >= 0 ? sq : -sq));
  double t1 = (A != 0.0) ? q / A : -1.0;
  double t2 = (q != 0.0) ? C / q : -1.0;
  for (double t : {t1, t2})
    if (t >= -1e-12 && t <= 1.0 + 1e-12) out.push_back(t);
}

}  // namespace

Vec2 DomainShape::boundary_crossing(Vec2 a, Vec2 b) const {
  // canonical endpoint order so both sides of a shared edge get the same point
  if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);

  switch (kind) {
    case DomainKind::half_plane: {
      const double da = normal.dot(a) - offset;
      const double db = normal.dot(b) - offset;
      if (da == db) throw GeometryError("segment parallel to half-plane boundary");
      const double t = da / (da - db);
      return a + t * (b - a);
    }
    case DomainKind::rotated_square:
    case DomainKind::axis_square: {
      const Vec2 qa = to_frame(*this, a), qb = to_frame(*this, b);
      std::vector<Candidate> cand;
      face_candidates(qa, qb, half_width, cand);
      if (cand.empty()) throw GeometryError("segment does not cross the square boundary");
      std::sort(cand.begin(), cand.end(),
                [](const Candidate& l, const Candidate& r) { return l.t < r.t; });
      // one true crossing for a convex shape; corner grazes duplicate it
      return from_frame(*this, cand.front().p);
    }
    case DomainKind::quadrant_with_hole: {
      std::vector<Candidate> cand;
      const Vec2 d = b - a;
      const double eps = 1e-12 * side;
      auto push_line = [&](double t) {
        if (t < -1e-12 || t > 1.0 + 1e-12) return;
        const Vec2 p = a + t * d;
        if (p.x >= -eps && p.x <= side + eps && p.y >= -eps && p.y <= side + eps &&
            p.norm() >= hole_radius - eps)
          cand.push_back({t, p});
      };
      if (d.x != 0) {
        push_line((0.0 - a.x) / d.x);
        push_line((side - a.x) / d.x);
      }
      if (d.y != 0) {
        push_line((0.0 - a.y) / d.y);
        push_line((side - a.y) / d.y);
      }
      if (hole_radius > 0) {
        std::vector<double> ts;
        circle_candidates(a, d, hole_radius, ts);
        for (double t : ts) {
          const Vec2 p = a + t * d;
          if (p.x >= -eps && p.x <= side + eps && p.y >= -eps && p.y <= side + eps)
            cand.push_back({t, p});
        }
      }
      if (cand.empty()) throw GeometryError("segment does not cross the quadrant boundary");
      // endpoints straddle, so the first boundary contact along the segment
      // is the crossing
      std::sort(cand.begin(), cand.end(),
                [](const Candidate& l, const Candidate& r) { return l.t < r.t; });
      return cand.front().p;
    }
  }
  throw GeometryError("unhandled domain kind");
}

int DomainShape::classify_facet(Vec2 a, Vec2 b) const {
  const double tol = 1e-9 * scale();
  switch (kind) {
    case DomainKind::rotated_square:
    case DomainKind::axis_square: {
      const Vec2 qa = to_frame(*this, a), qb = to_frame(*this, b);
      const auto on = [&](Vec2 q) {
        return std::fabs(std::max(std::fabs(q.x), std::fabs(q.y)) - half_width) <= tol;
      };
      return (on(qa) && on(qb)) ? marker_boundary : 0;
    }
    case DomainKind::half_plane: {
      const auto on = [&](Vec2 p) { return std::fabs(normal.dot(p) - offset) <= tol; };
      return (on(a) && on(b)) ? marker_boundary : 0;
    }
    case DomainKind::quadrant_with_hole: {
      if (std::fabs(a.y) <= tol && std::fabs(b.y) <= tol) return marker_sym_x;
      if (std::fabs(a.x) <= tol && std::fabs(b.x) <= tol) return marker_sym_y;
      if ((std::fabs(a.x - side) <= tol && std::fabs(b.x - side) <= tol) ||
          (std::fabs(a.y - side) <= tol && std::fabs(b.y - side) <= tol))
        return marker_outer;
      if (hole_radius > 0 && std::fabs(a.norm() - hole_radius) <= tol &&
          std::fabs(b.norm() - hole_radius) <= tol)
        return marker_hole;
      return 0;
    }
  }
  return 0;
}

Vec2 DomainShape::project_boundary(int marker, Vec2 p) const {
  if (kind == DomainKind::quadrant_with_hole && marker == marker_hole && hole_radius > 0) {
    const double r = p.norm();
    if (r == 0) throw GeometryError("cannot project the origin onto the hole");
    return p * (hole_radius / r);
  }
  return p;
}

std::vector<int> DomainShape::markers() const {
  if (kind == DomainKind::quadrant_with_hole) {
    std::vector<int> m{marker_sym_x, marker_sym_y, marker_outer};
    if (hole_radius > 0) m.push_back(marker_hole);
    return m;
  }
  return {marker_boundary};
}

}  // namespace ibfem
