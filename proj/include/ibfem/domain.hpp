#pragma once

#include <vector>

#include "ibfem/geometry.hpp"

namespace ibfem {

enum class DomainKind { rotated_square, axis_square, half_plane, quadrant_with_hole };

// boundary markers of the quadrant domain; the square/half-plane kinds use a
// single marker 1 for the whole boundary
inline constexpr int marker_boundary = 1;
inline constexpr int marker_sym_x = 1;   // y = 0 edge
inline constexpr int marker_sym_y = 2;   // x = 0 edge
inline constexpr int marker_outer = 3;   // x = side or y = side
inline constexpr int marker_hole = 4;    // circular arc

// implicit description of the computational domain; signed distance-like
// level function, negative inside
struct DomainShape {
  DomainKind kind = DomainKind::axis_square;
  Vec2 center;             // squares
  double half_width = 0;   // squares: half side length
  double angle = 0;        // rotated square, radians
  Vec2 normal{1, 0};       // half-plane: normal . x < offset
  double offset = 0;
  double side = 0;         // quadrant: [0,side]^2
  double hole_radius = 0;  // quadrant hole about the origin

  double signed_distance(Vec2 p) const;
  bool inside(Vec2 p, double tol) const { return signed_distance(p) <= tol; }
  bool is_polygonal() const;
  bool is_bounded() const { return kind != DomainKind::half_plane; }
  double area() const;  // exact, polygonal bounded kinds only
  // bounding box; bounded kinds only
  void bounding_box(Vec2& lo, Vec2& hi) const;

  // exact intersection of segment [a,b] with the boundary; endpoints must
  // straddle it
  Vec2 boundary_crossing(Vec2 a, Vec2 b) const;

  // marker of the boundary piece the segment [a,b] lies on, 0 if none
  int classify_facet(Vec2 a, Vec2 b) const;

  // pull a point onto the analytic boundary piece of the marker; identity for
  // straight pieces
  Vec2 project_boundary(int marker, Vec2 p) const;

  std::vector<int> markers() const;

  // characteristic length used for tolerances
  double scale() const;
};

DomainShape make_rotated_square(Vec2 center, double half_width, double angle);
DomainShape make_axis_square(Vec2 center, double half_width);
DomainShape make_half_plane(Vec2 normal, double offset);
DomainShape make_quadrant_with_hole(double side, double hole_radius);

}  // namespace ibfem
