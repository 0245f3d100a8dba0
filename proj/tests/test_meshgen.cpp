#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "ibfem/domain.hpp"
#include "ibfem/errors.hpp"
#include "ibfem/meshgen.hpp"

using namespace ibfem;

namespace {

GridDesc unit_cells(int n, double h = 1.0, Vec2 origin = {0, 0}) {
  GridDesc g;
  g.origin = origin;
  g.h = h;
  g.ncx = n;
  g.ncy = n;
  return g;
}

double mesh_area(const ForegroundMesh& m) {
  double a = 0;
  for (int t = 0; t < m.num_tris(); ++t) a += triangle_area_of(m, t);
  return a;
}

Vec2 centroid_of(const ForegroundMesh& m, int t) {
  const auto& tri = m.tris[t];
  return (m.vertices[tri[0]] + m.vertices[tri[1]] + m.vertices[tri[2]]) * (1.0 / 3.0);
}

// hand-built two-element mesh with one sliver, facets on both elements
ForegroundMesh sliver_mesh() {
  ForegroundMesh m;
  m.vertices = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {2, 2e-8}};
  m.tris = {{0, 1, 2}, {1, 3, 4}};  // areas 0.5 and 1e-8
  m.facets.push_back({0, 0, 1, {0, -1}});
  m.facets.push_back({1, 0, 1, {0, -1}});
  m.eta = mesh_eta(m);
  return m;
}

}  // namespace

TEST_CASE("cut templates: keep, drop, one-inside, two-inside") {
  const DomainShape half = make_half_plane({1, 0}, 0.5);  // inside: x <= 0.5
  std::vector<std::array<Vec2, 3>> out;

  SUBCASE("all vertices inside -> kept unchanged") {
    detail::cut_triangle(half, {{{0, 0}, {0.2, 0}, {0, 0.2}}}, 1e-12, out);
    REQUIRE(out.size() == 1);
    CHECK(triangle_area(out[0][0], out[0][1], out[0][2]) == doctest::Approx(0.02).epsilon(1e-13));
  }
  SUBCASE("all vertices outside -> dropped") {
    detail::cut_triangle(half, {{{0.6, 0}, {1, 0}, {0.6, 0.4}}}, 1e-12, out);
    CHECK(out.empty());
  }
  SUBCASE("one inside -> single triangle from the inside vertex") {
    // the documented hand case: lower cell triangle against x <= 0.5
    detail::cut_triangle(half, {{{0, 0}, {1, 0}, {1, 1}}}, 1e-12, out);
    REQUIRE(out.size() == 1);
    const double a = triangle_area(out[0][0], out[0][1], out[0][2]);
    CHECK(a == doctest::Approx(0.125).epsilon(1e-13));  // (0,0),(0.5,0),(0.5,0.5)
    for (const Vec2& v : out[0]) CHECK(half.signed_distance(v) <= 1e-12);
  }
  SUBCASE("two inside -> quad split into two triangles") {
    detail::cut_triangle(half, {{{0, 0}, {1, 0}, {0, 1}}}, 1e-12, out);
    REQUIRE(out.size() == 2);
    double a = 0;
    for (const auto& t : out) a += triangle_area(t[0], t[1], t[2]);
    CHECK(a == doctest::Approx(0.375).epsilon(1e-13));
  }
  SUBCASE("grazing vertex counts as inside (tie tolerance)") {
    // vertex exactly on the boundary, others inside -> kept whole
    detail::cut_triangle(half, {{{0.5, 0}, {0.3, 0.6}, {0.1, 0.1}}}, 1e-12, out);
    REQUIRE(out.size() == 1);
  }
}

TEST_CASE("fitted generation on uncut and discarded cells") {
  SUBCASE("cell entirely inside -> two triangles") {
    const ForegroundMesh m = generate_fitted_foreground(make_half_plane({1, 0}, 2.0), unit_cells(1));
    CHECK(m.num_tris() == 2);
    CHECK(mesh_area(m) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("cell entirely outside -> empty mesh, no facets") {
    const ForegroundMesh m = generate_fitted_foreground(make_half_plane({1, 0}, -1.0), unit_cells(1));
    CHECK(m.num_tris() == 0);
    CHECK(m.facets.empty());
  }
}

TEST_CASE("fitted rotated square: exact area, containment, boundary closure") {
  const DomainShape dom = make_rotated_square({0, 0}, 0.35355339059327379, 0.78539816339744831);
  const GridDesc grid = unit_cells(8, 0.25, {-1, -1});
  const ForegroundMesh m = generate_fitted_foreground(dom, grid);
  validate_mesh(m);
  CHECK(find_hanging_nodes(m).empty());

  CHECK(std::fabs(mesh_area(m) - dom.area()) <= 1e-12);
  for (int t = 0; t < m.num_tris(); ++t) {
    CHECK(triangle_area_of(m, t) > 0);
    CHECK(dom.inside(centroid_of(m, t), 1e-12));
    // parent consistency: vertices within the parent cell closure
    const int cell = m.parent_cell[t];
    REQUIRE(cell >= 0);
    const int cx = cell % grid.ncx, cy = cell / grid.ncx;
    for (int v = 0; v < 3; ++v) {
      const Vec2 p = m.vertices[m.tris[t][v]];
      CHECK(p.x >= grid.origin.x + cx * grid.h - 1e-12);
      CHECK(p.x <= grid.origin.x + (cx + 1) * grid.h + 1e-12);
      CHECK(p.y >= grid.origin.y + cy * grid.h - 1e-12);
      CHECK(p.y <= grid.origin.y + (cy + 1) * grid.h + 1e-12);
    }
  }
  for (const BoundaryFacet& f : m.facets) {
    CHECK(f.marker == marker_boundary);
    const auto [a, b] = facet_points(m, f);
    CHECK(std::fabs(dom.signed_distance(a)) <= 1e-12);
    CHECK(std::fabs(dom.signed_distance(b)) <= 1e-12);
    // outward: stepping along the normal leaves the domain
    const Vec2 mid = (a + b) * 0.5;
    CHECK(dom.signed_distance(mid + 1e-6 * f.normal) > 0);
  }
}

TEST_CASE("unfitted generation is exact on the square and rejects curved domains") {
  const double hw = 0.5;
  const DomainShape dom = make_rotated_square({0.3, -0.2}, hw, 0.3);
  SUBCASE("structured count and exact area") {
    const ForegroundMesh m = generate_unfitted_foreground(dom, 2 * hw / 4);
    CHECK(m.num_tris() == 32);  // 4x4 cells, two triangles each
    CHECK(std::fabs(mesh_area(m) - dom.area()) <= 1e-12);
    validate_mesh(m);
    for (int pc : m.parent_cell) CHECK(pc == -1);
    // boundary vertex count for an n x n grid on a square is 4n
    std::vector<char> on_boundary(m.num_vertices(), 0);
    for (const BoundaryFacet& f : m.facets) {
      on_boundary[m.tris[f.tri][f.edge]] = 1;
      on_boundary[m.tris[f.tri][(f.edge + 1) % 3]] = 1;
    }
    int nb = 0;
    for (char c : on_boundary) nb += c;
    CHECK(nb == 16);
  }
  SUBCASE("curved domains are out of scope") {
    CHECK_THROWS_AS(generate_unfitted_foreground(make_quadrant_with_hole(4.0, 1.0), 0.5),
                    CapabilityError);
  }
  SUBCASE("bad target size") {
    CHECK_THROWS_AS(generate_unfitted_foreground(dom, 0.0), ConfigError);
  }
}

TEST_CASE("boundary refinement: conformity, circle projection, identity at zero levels") {
  const DomainShape dom = make_quadrant_with_hole(4.0, 1.0);
  const GridDesc grid = unit_cells(8, 0.5);
  const ForegroundMesh m = generate_fitted_foreground(dom, grid);

  SUBCASE("levels = 0 returns the mesh unchanged") {
    const ForegroundMesh r = refine_near_boundary(m, dom, 0, marker_hole);
    CHECK(r.num_tris() == m.num_tris());
    CHECK(r.num_vertices() == m.num_vertices());
  }
  SUBCASE("one level: more elements, no hanging nodes, vertices on the circle") {
    const ForegroundMesh r = refine_near_boundary(m, dom, 1, marker_hole);
    validate_mesh(r);
    CHECK(r.num_tris() > m.num_tris());
    CHECK(find_hanging_nodes(r).empty());
    for (const BoundaryFacet& f : r.facets) {
      if (f.marker != marker_hole) continue;
      const auto [a, b] = facet_points(r, f);
      CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(b.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    // chord triangles overlap into the circular hole; splitting chords and
    // projecting the midpoints onto the circle shrinks that overshoot, so the
    // mesh area decreases toward the exact value from above
    const double exact = 16.0 - std::acos(-1.0) / 4.0;
    CHECK(mesh_area(m) > exact);
    CHECK(mesh_area(r) > exact);
    CHECK(mesh_area(r) < mesh_area(m));
  }
  SUBCASE("unknown marker is rejected") {
    CHECK_THROWS_AS(refine_near_boundary(m, dom, 1, 77), ConfigError);
  }
}

TEST_CASE("sliver filter removes exactly the below-threshold elements") {
  const ForegroundMesh m = sliver_mesh();
  SUBCASE("documented case: areas {0.5, 1e-8} at rel_tol 1e-5") {
    const FilterResult r = filter_slivers(m, 1e-5);
    CHECK(r.removed == 1);
    CHECK(r.threshold == doctest::Approx(0.5e-5).epsilon(1e-14));
    REQUIRE(r.mesh.num_tris() == 1);
    CHECK(triangle_area_of(r.mesh, 0) == doctest::Approx(0.5).epsilon(1e-14));
    // the dropped element's facet went with it, the survivor's stayed
    REQUIRE(r.mesh.facets.size() == 1);
    CHECK(r.mesh.facets[0].tri == 0);
    validate_mesh(r.mesh);
  }
  SUBCASE("rel_tol = 0 keeps everything") {
    const FilterResult r = filter_slivers(m, 0.0);
    CHECK(r.removed == 0);
    CHECK(r.mesh.num_tris() == m.num_tris());
  }
  SUBCASE("threshold is exact: at-threshold elements survive") {
    // areas 0.5 and 5e-6; rel_tol 1e-5 puts the threshold exactly at 5e-6,
    // and removal requires area strictly below it
    ForegroundMesh two = sliver_mesh();
    two.vertices[4] = {2, 1e-5};  // second triangle area becomes 5e-6
    const FilterResult r = filter_slivers(two, 1e-5);
    CHECK(r.removed == 0);
    const FilterResult r2 = filter_slivers(two, 1.0000001e-5);
    CHECK(r2.removed == 1);
  }
}

TEST_CASE("quality report aspect ratios") {
  ForegroundMesh m;
  m.vertices = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}, {0, 1}};
  m.tris = {{0, 1, 2}, {0, 1, 3}};  // equilateral and unit right triangle
  m.eta = mesh_eta(m);
  const QualityReport q = quality_report(m);
  CHECK(q.num_tris == 2);
  CHECK(q.max_aspect == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(triangle_aspect({0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}) ==
        doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("hanging node detector flags a deliberately broken mesh") {
  ForegroundMesh m;
  // vertex 4 sits on the midpoint of the shared edge of one neighbor only
  m.vertices = {{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}};
  m.tris = {{0, 1, 2}, {1, 3, 4}, {4, 3, 2}};
  m.eta = mesh_eta(m);
  const std::vector<int> h = find_hanging_nodes(m);
  REQUIRE(h.size() == 1);
  CHECK(h[0] == 4);
}
