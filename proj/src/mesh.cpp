#include "ibfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ibfem/errors.hpp"

namespace ibfem {

double triangle_area_of(const ForegroundMesh& m, int t) {
  const auto& tri = m.tris[t];
  return triangle_area(m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]);
}

std::pair<Vec2, Vec2> facet_points(const ForegroundMesh& m, const BoundaryFacet& f) {
  const auto& tri = m.tris[f.tri];
  return {m.vertices[tri[f.edge]], m.vertices[tri[(f.edge + 1) % 3]]};
}

double facet_length(const ForegroundMesh& m, const BoundaryFacet& f) {
  const auto [a, b] = facet_points(m, f);
  return (b - a).norm();
}

Vec2 outward_normal(const ForegroundMesh& m, int tri, int edge) {
  const auto& t = m.tris[tri];
  const Vec2 a = m.vertices[t[edge]], b = m.vertices[t[(edge + 1) % 3]];
  const Vec2 e = b - a;
  const double len = e.norm();
  return {e.y / len, -e.x / len};  // CCW element, so this points outward
}

double mesh_eta(const ForegroundMesh& m) {
  if (m.tris.empty()) return 0.0;
  std::vector<double> areas(m.tris.size());
  for (int t = 0; t < m.num_tris(); ++t) areas[t] = triangle_area_of(m, t);
  std::sort(areas.begin(), areas.end());
  const size_t n = areas.size();
  const double med =
      (n % 2 == 1) ? areas[n / 2] : 0.5 * (areas[n / 2 - 1] + areas[n / 2]);
  return std::sqrt(med);
}

double triangle_aspect(Vec2 a, Vec2 b, Vec2 c) {
  const double e0 = (b - a).dot(b - a);
  const double e1 = (c - b).dot(c - b);
  const double e2 = (a - c).dot(a - c);
  const double area = triangle_area(a, b, c);
  return std::max({e0, e1, e2}) / (2.0 * area);
}

QualityReport quality_report(const ForegroundMesh& m) {
  QualityReport q;
  q.num_tris = m.num_tris();
  if (m.tris.empty()) return q;
  std::vector<double> areas(m.tris.size());
  q.min_area = 1e300;
  for (int t = 0; t < m.num_tris(); ++t) {
    areas[t] = triangle_area_of(m, t);
    q.min_area = std::min(q.min_area, areas[t]);
    q.max_area = std::max(q.max_area, areas[t]);
    const auto& tri = m.tris[t];
    q.max_aspect = std::max(
        q.max_aspect,
        triangle_aspect(m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]));
  }
  std::sort(areas.begin(), areas.end());
  const size_t n = areas.size();
  q.median_area = (n % 2 == 1) ? areas[n / 2] : 0.5 * (areas[n / 2 - 1] + areas[n / 2]);
  return q;
}

void validate_mesh(const ForegroundMesh& m) {
  std::vector<char> used(m.vertices.size(), 0);
  for (int t = 0; t < m.num_tris(); ++t) {
    for (int v : m.tris[t]) {
      if (v < 0 || v >= m.num_vertices())
        throw GeometryError("triangle " + std::to_string(t) + " has an out-of-range vertex");
      used[v] = 1;
    }
    if (!(triangle_area_of(m, t) > 0))
      throw GeometryError("triangle " + std::to_string(t) + " has non-positive area");
  }
  for (size_t v = 0; v < used.size(); ++v)
    if (!used[v]) throw GeometryError("vertex " + std::to_string(v) + " is unreferenced");
  for (const auto& f : m.facets)
    if (f.tri < 0 || f.tri >= m.num_tris() || f.edge < 0 || f.edge > 2)
      throw GeometryError("facet references a missing triangle edge");
  if (!m.parent_cell.empty() && m.parent_cell.size() != m.tris.size())
    throw GeometryError("parent cell table size mismatch");
}

std::vector<int> find_hanging_nodes(const ForegroundMesh& m) {
  // a hanging node sits at the midpoint of a neighbor's unsplit edge; use a
  // tolerant coordinate hash over the vertices
  const double tol = std::max(1e-300, 1e-12 * std::max(m.eta, mesh_eta(m)));
  const double cell = std::max(tol, 1e-12);
  auto key = [&](double x) { return static_cast<long long>(std::floor(x / cell)); };
  std::unordered_map<long long, std::vector<int>> buckets;
  auto bucket_key = [&](Vec2 p) { return key(p.x) * 1000003LL + key(p.y); };
  for (int v = 0; v < m.num_vertices(); ++v) buckets[bucket_key(m.vertices[v])].push_back(v);

  std::vector<int> hanging;
  for (int t = 0; t < m.num_tris(); ++t) {
    for (int e = 0; e < 3; ++e) {
      const int va = m.tris[t][e], vb = m.tris[t][(e + 1) % 3];
      const Vec2 mid = (m.vertices[va] + m.vertices[vb]) * 0.5;
      for (long long dx = -1; dx <= 1; ++dx) {
        for (long long dy = -1; dy <= 1; ++dy) {
          auto it = buckets.find((key(mid.x) + dx) * 1000003LL + (key(mid.y) + dy));
          if (it == buckets.end()) continue;
          for (int v : it->second) {
            if (v == va || v == vb) continue;
            if ((m.vertices[v] - mid).norm() <= tol) hanging.push_back(v);
          }
        }
      }
    }
  }
  std::sort(hanging.begin(), hanging.end());
  hanging.erase(std::unique(hanging.begin(), hanging.end()), hanging.end());
  return hanging;
}

}  // namespace ibfem
