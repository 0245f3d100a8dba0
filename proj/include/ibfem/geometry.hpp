#pragma once

#include <array>
#include <cmath>

namespace ibfem {

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

// signed parallelogram area of (b-a, c-a)
inline double cross2(Vec2 a, Vec2 b, Vec2 c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

inline double triangle_area(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * cross2(a, b, c); }

// 2x2 matrix, row major
struct Mat2 {
  double a = 0, b = 0, c = 0, d = 0;  // [a b; c d]

  double det() const { return a * d - b * c; }
  Mat2 inverse() const {
    double idet = 1.0 / det();
    return {d * idet, -b * idet, -c * idet, a * idet};
  }
  Mat2 transpose() const { return {a, c, b, d}; }
  Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
};

// symmetric 2x2 tensor (xx, xy, yy)
struct Sym2 {
  double xx = 0, xy = 0, yy = 0;

  double trace() const { return xx + yy; }
  Sym2 operator+(Sym2 o) const { return {xx + o.xx, xy + o.xy, yy + o.yy}; }
  Sym2 operator-(Sym2 o) const { return {xx - o.xx, xy - o.xy, yy - o.yy}; }
  Sym2 operator*(double s) const { return {xx * s, xy * s, yy * s}; }
  // Frobenius norm squared, off-diagonal counted twice
  double frob2() const { return xx * xx + 2.0 * xy * xy + yy * yy; }
};

}  // namespace ibfem
