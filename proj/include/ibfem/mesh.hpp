#pragma once

#include <array>
#include <utility>
#include <vector>

#include "ibfem/geometry.hpp"

namespace ibfem {

// boundary edge of one triangle; edge e runs from local vertex e to (e+1)%3
struct BoundaryFacet {
  int tri = 0;
  int edge = 0;
  int marker = 0;
  Vec2 normal;  // outward unit normal
};

struct ForegroundMesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> tris;  // CCW
  std::vector<BoundaryFacet> facets;
  std::vector<int> parent_cell;  // background cell per triangle, -1 if unfitted
  double eta = 0;                // sqrt of the median element area

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_tris() const { return static_cast<int>(tris.size()); }
};

double triangle_area_of(const ForegroundMesh& m, int t);

// endpoints of a facet in element-local edge order
std::pair<Vec2, Vec2> facet_points(const ForegroundMesh& m, const BoundaryFacet& f);
double facet_length(const ForegroundMesh& m, const BoundaryFacet& f);

Vec2 outward_normal(const ForegroundMesh& m, int tri, int edge);

// sqrt of the median triangle area
double mesh_eta(const ForegroundMesh& m);

struct QualityReport {
  int num_tris = 0;
  double min_area = 0;
  double max_area = 0;
  double median_area = 0;
  double max_aspect = 0;  // longest edge squared over twice the area
};

QualityReport quality_report(const ForegroundMesh& m);

double triangle_aspect(Vec2 a, Vec2 b, Vec2 c);

// positive areas, facet indices in range, every vertex referenced
void validate_mesh(const ForegroundMesh& m);

// vertices sitting in the interior of another element's edge
std::vector<int> find_hanging_nodes(const ForegroundMesh& m);

}  // namespace ibfem
