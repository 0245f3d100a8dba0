#include "ibfem/meshgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <unordered_map>

#include "ibfem/errors.hpp"

namespace ibfem {

namespace {

// exact-bit vertex dedup; corner and cut coordinates are computed from
// canonical expressions so duplicates match bitwise
struct VertexPool {
  std::vector<Vec2>& verts;
  std::unordered_map<unsigned long long, std::vector<int>> map;

  explicit VertexPool(std::vector<Vec2>& v) : verts(v) {}

  static unsigned long long hash_bits(Vec2 p) {
    unsigned long long hx, hy;
    std::memcpy(&hx, &p.x, 8);
    std::memcpy(&hy, &p.y, 8);
    return hx * 1000003ULL ^ hy;
  }

  int insert(Vec2 p) {
    auto& bucket = map[hash_bits(p)];
    for (int id : bucket)
      if (verts[id].x == p.x && verts[id].y == p.y) return id;
    const int id = static_cast<int>(verts.size());
    verts.push_back(p);
    bucket.push_back(id);
    return id;
  }
};

using EdgeKey = std::pair<int, int>;
EdgeKey edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

struct EdgeUse {
  int count = 0;
  int tri = -1, edge = -1;
};

std::map<EdgeKey, EdgeUse> edge_uses(const ForegroundMesh& m) {
  std::map<EdgeKey, EdgeUse> uses;
  for (int t = 0; t < m.num_tris(); ++t) {
    for (int e = 0; e < 3; ++e) {
      EdgeUse& u = uses[edge_key(m.tris[t][e], m.tris[t][(e + 1) % 3])];
      ++u.count;
      u.tri = t;
      u.edge = e;
    }
  }
  return uses;
}

// one-sided edges that lie on the analytic domain boundary become facets;
// one-sided edges from grid truncation stay unmarked and are skipped
void attach_boundary_facets(ForegroundMesh& m, const DomainShape& domain) {
  m.facets.clear();
  for (const auto& [key, use] : edge_uses(m)) {
    if (use.count != 1) continue;
    const Vec2 a = m.vertices[m.tris[use.tri][use.edge]];
    const Vec2 b = m.vertices[m.tris[use.tri][(use.edge + 1) % 3]];
    const int marker = domain.classify_facet(a, b);
    if (marker <= 0) continue;
    m.facets.push_back({use.tri, use.edge, marker, outward_normal(m, use.tri, use.edge)});
  }
}

}  // namespace

namespace detail {

void cut_triangle(const DomainShape& domain, const std::array<Vec2, 3>& tri, double tol,
                  std::vector<std::array<Vec2, 3>>& out) {
  double sd[3];
  bool in[3];
  int n_in = 0, n_on = 0;
  for (int i = 0; i < 3; ++i) {
    sd[i] = domain.signed_distance(tri[i]);
    in[i] = sd[i] <= tol;
    n_in += in[i];
    n_on += std::fabs(sd[i]) <= tol;
  }
  const double full_area = triangle_area(tri[0], tri[1], tri[2]);
  const double eps_area = 1e-12 * std::fabs(full_area);
  auto emit = [&](Vec2 a, Vec2 b, Vec2 c) {
    if (triangle_area(a, b, c) > eps_area) out.push_back({a, b, c});
  };
  // crossings that land on a vertex must reuse its exact bits, otherwise
  // rounding-thin slivers appear along vertex-aligned boundaries
  auto snap = [tol](Vec2 s, Vec2 e0, Vec2 e1) {
    if ((s - e0).norm() <= tol) return e0;
    if ((s - e1).norm() <= tol) return e1;
    return s;
  };

  if (n_in == 3) {
    if (n_on == 3) {
      // every vertex sits on the boundary: genuine only if the interior is
      // actually inside
      const Vec2 cen = (tri[0] + tri[1] + tri[2]) * (1.0 / 3.0);
      if (!(domain.signed_distance(cen) < -tol))
        throw GeometryError("degenerate cut: all triangle vertices on the boundary");
    }
    emit(tri[0], tri[1], tri[2]);
    return;
  }
  if (n_in == 0) return;

  if (n_in == 1) {
    int i = 0;
    while (!in[i]) ++i;
    const Vec2 P = tri[i], Q = tri[(i + 1) % 3], R = tri[(i + 2) % 3];
    const Vec2 s1 = snap(domain.boundary_crossing(P, Q), P, Q);
    const Vec2 s2 = snap(domain.boundary_crossing(P, R), P, R);
    emit(P, s1, s2);
    return;
  }

  // two inside: R is the outside vertex, quad (P,Q,s1,s2) split along its
  // shorter diagonal
  int i = 0;
  while (in[i]) ++i;
  const Vec2 R = tri[i], P = tri[(i + 1) % 3], Q = tri[(i + 2) % 3];
  const Vec2 s1 = snap(domain.boundary_crossing(Q, R), Q, R);
  const Vec2 s2 = snap(domain.boundary_crossing(R, P), R, P);
  const double d1 = (s1 - P).norm(), d2 = (s2 - Q).norm();
  if (d1 <= d2) {
    emit(P, Q, s1);
    emit(P, s1, s2);
  } else {
    emit(P, Q, s2);
    emit(Q, s1, s2);
  }
}

}  // namespace detail

ForegroundMesh generate_fitted_foreground(const DomainShape& domain, const GridDesc& grid) {
  if (domain.is_bounded()) {
    Vec2 lo, hi;
    domain.bounding_box(lo, hi);
    const double eps = 1e-9 * grid.h;
    if (lo.x < grid.origin.x - eps || lo.y < grid.origin.y - eps ||
        hi.x > grid.upper().x + eps || hi.y > grid.upper().y + eps)
      throw GeometryError("background grid does not cover the domain bounding box");
  }

  const double tol = 1e-12 * grid.h;
  ForegroundMesh m;
  VertexPool pool(m.vertices);
  std::vector<std::array<Vec2, 3>> pieces;

  for (int cj = 0; cj < grid.ncy; ++cj) {
    for (int ci = 0; ci < grid.ncx; ++ci) {
      const Vec2 a{grid.origin.x + ci * grid.h, grid.origin.y + cj * grid.h};
      const Vec2 b{grid.origin.x + (ci + 1) * grid.h, grid.origin.y + cj * grid.h};
      const Vec2 c{grid.origin.x + (ci + 1) * grid.h, grid.origin.y + (cj + 1) * grid.h};
      const Vec2 d{grid.origin.x + ci * grid.h, grid.origin.y + (cj + 1) * grid.h};
      const int cell = cj * grid.ncx + ci;
      for (const auto& tri : {std::array<Vec2, 3>{a, b, c}, std::array<Vec2, 3>{a, c, d}}) {
        pieces.clear();
        try {
          detail::cut_triangle(domain, tri, tol, pieces);
        } catch (const GeometryError& e) {
          throw GeometryError(std::string(e.what()) + " (cell " + std::to_string(cell) + ")");
        }
        for (const auto& p : pieces) {
          m.tris.push_back({pool.insert(p[0]), pool.insert(p[1]), pool.insert(p[2])});
          m.parent_cell.push_back(cell);
        }
      }
    }
  }
  attach_boundary_facets(m, domain);
  m.eta = mesh_eta(m);
  return m;
}

ForegroundMesh generate_unfitted_foreground(const DomainShape& domain, double target_eta) {
  if (domain.kind != DomainKind::rotated_square && domain.kind != DomainKind::axis_square)
    throw CapabilityError("unfitted generation supports the polygonal square domains only");
  if (!(target_eta > 0)) throw ConfigError("target element size must be positive");

  const double side = 2.0 * domain.half_width;
  const int n = std::max(1, static_cast<int>(std::ceil(side / target_eta - 1e-9)));
  const double step = side / n;
  const double ca = std::cos(domain.angle), sa = std::sin(domain.angle);
  auto vertex = [&](int i, int j) -> Vec2 {
    const double qx = -domain.half_width + i * step;
    const double qy = -domain.half_width + j * step;
    return {domain.center.x + ca * qx - sa * qy, domain.center.y + sa * qx + ca * qy};
  };

  ForegroundMesh m;
  m.vertices.reserve(static_cast<size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) m.vertices.push_back(vertex(i, j));
  auto vid = [&](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      m.tris.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      m.tris.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
      m.parent_cell.push_back(-1);
      m.parent_cell.push_back(-1);
    }
  }
  attach_boundary_facets(m, domain);
  m.eta = mesh_eta(m);
  return m;
}

ForegroundMesh refine_near_boundary(const ForegroundMesh& mesh, const DomainShape& domain,
                                    int levels, int marker) {
  if (levels < 0) throw ConfigError("refinement level count must be non-negative");
  bool found = false;
  for (const auto& f : mesh.facets) found = found || (f.marker == marker);
  if (!found) throw ConfigError("unknown boundary marker " + std::to_string(marker));

  ForegroundMesh cur = mesh;
  for (int level = 0; level < levels; ++level) {
    const int ntri = cur.num_tris();

    std::map<EdgeKey, int> facet_marker;
    for (const auto& f : cur.facets) {
      const auto& t = cur.tris[f.tri];
      facet_marker[edge_key(t[f.edge], t[(f.edge + 1) % 3])] = f.marker;
    }

    std::vector<char> red(ntri, 0);
    for (const auto& f : cur.facets)
      if (f.marker == marker) red[f.tri] = 1;

    std::map<EdgeKey, char> split;
    auto mark_edges = [&](int t) {
      for (int e = 0; e < 3; ++e) split[edge_key(cur.tris[t][e], cur.tris[t][(e + 1) % 3])] = 1;
    };
    for (int t = 0; t < ntri; ++t)
      if (red[t]) mark_edges(t);

    // closure: two split edges force a red split
    for (bool changed = true; changed;) {
      changed = false;
      for (int t = 0; t < ntri; ++t) {
        if (red[t]) continue;
        int ns = 0;
        for (int e = 0; e < 3; ++e)
          ns += split.count(edge_key(cur.tris[t][e], cur.tris[t][(e + 1) % 3]));
        if (ns >= 2) {
          red[t] = 1;
          mark_edges(t);
          changed = true;
        }
      }
    }

    // every split edge gets its midpoint up front (deterministic id order);
    // midpoints of marked facets are pulled onto the analytic boundary
    std::map<EdgeKey, int> midpoint;
    for (const auto& kv : split) {
      const EdgeKey& k = kv.first;
      Vec2 p = (cur.vertices[k.first] + cur.vertices[k.second]) * 0.5;
      auto fm = facet_marker.find(k);
      if (fm != facet_marker.end()) p = domain.project_boundary(fm->second, p);
      midpoint.emplace(k, static_cast<int>(cur.vertices.size()));
      cur.vertices.push_back(p);
    }
    auto midpoint_of = [&](int a, int b) { return midpoint.at(edge_key(a, b)); };

    ForegroundMesh next;
    next.vertices = cur.vertices;  // midpoints were appended above as created
    std::map<EdgeKey, int> next_marker;
    auto inherit = [&](int a, int b) {
      auto fm = facet_marker.find(edge_key(a, b));
      if (fm != facet_marker.end()) next_marker[edge_key(a, b)] = fm->second;
    };

    for (int t = 0; t < ntri; ++t) {
      const auto [v0, v1, v2] = cur.tris[t];
      const int parent = cur.parent_cell.empty() ? -1 : cur.parent_cell[t];
      auto add = [&](int a, int b, int c) {
        next.tris.push_back({a, b, c});
        next.parent_cell.push_back(parent);
      };
      if (red[t]) {
        const int m01 = midpoint_of(v0, v1), m12 = midpoint_of(v1, v2), m20 = midpoint_of(v2, v0);
        add(v0, m01, m20);
        add(m01, v1, m12);
        add(m20, m12, v2);
        add(m01, m12, m20);
        // a split boundary edge turns into two marked halves
        for (const auto& [a, b, mm] : std::initializer_list<std::array<int, 3>>{
                 {v0, v1, m01}, {v1, v2, m12}, {v2, v0, m20}}) {
          auto fm = facet_marker.find(edge_key(a, b));
          if (fm != facet_marker.end()) {
            next_marker[edge_key(a, mm)] = fm->second;
            next_marker[edge_key(mm, b)] = fm->second;
          }
        }
      } else {
        int se = -1, ns = 0;
        for (int e = 0; e < 3; ++e) {
          if (split.count(edge_key(cur.tris[t][e], cur.tris[t][(e + 1) % 3]))) {
            se = e;
            ++ns;
          }
        }
        if (ns == 0) {
          add(v0, v1, v2);
          inherit(v0, v1);
          inherit(v1, v2);
          inherit(v2, v0);
        } else {
          // green: bisect towards the one split edge
          const int a = cur.tris[t][se], b = cur.tris[t][(se + 1) % 3],
                    c = cur.tris[t][(se + 2) % 3];
          const int mm = midpoint_of(a, b);
          add(c, a, mm);
          add(c, mm, b);
          inherit(b, c);
          inherit(c, a);
          auto fm = facet_marker.find(edge_key(a, b));
          if (fm != facet_marker.end()) {
            next_marker[edge_key(a, mm)] = fm->second;
            next_marker[edge_key(mm, b)] = fm->second;
          }
        }
      }
    }

    // drop unreferenced leftovers is unnecessary: every midpoint was created
    // on demand for an emitted triangle
    next.facets.clear();
    for (const auto& [key, use] : edge_uses(next)) {
      if (use.count != 1) continue;
      auto it = next_marker.find(key);
      if (it == next_marker.end()) continue;
      next.facets.push_back(
          {use.tri, use.edge, it->second, outward_normal(next, use.tri, use.edge)});
    }
    next.eta = mesh_eta(next);
    cur = std::move(next);
  }
  if (levels == 0) cur.eta = mesh_eta(cur);
  return cur;
}

FilterResult filter_slivers(const ForegroundMesh& mesh, double rel_tol) {
  if (!(rel_tol >= 0)) throw ConfigError("sliver tolerance must be non-negative");
  double max_area = 0;
  std::vector<double> area(mesh.num_tris());
  for (int t = 0; t < mesh.num_tris(); ++t) {
    area[t] = triangle_area_of(mesh, t);
    max_area = std::max(max_area, area[t]);
  }
  FilterResult res;
  res.threshold = rel_tol * max_area;

  std::vector<int> tri_map(mesh.num_tris(), -1);
  std::vector<int> vert_map(mesh.num_vertices(), -1);
  ForegroundMesh& out = res.mesh;
  for (int t = 0; t < mesh.num_tris(); ++t) {
    if (area[t] < res.threshold) {
      ++res.removed;
      continue;
    }
    std::array<int, 3> tri;
    for (int i = 0; i < 3; ++i) {
      const int v = mesh.tris[t][i];
      if (vert_map[v] < 0) {
        vert_map[v] = out.num_vertices();
        out.vertices.push_back(mesh.vertices[v]);
      }
      tri[i] = vert_map[v];
    }
    tri_map[t] = out.num_tris();
    out.tris.push_back(tri);
    if (!mesh.parent_cell.empty()) out.parent_cell.push_back(mesh.parent_cell[t]);
  }
  for (const auto& f : mesh.facets) {
    if (tri_map[f.tri] < 0) continue;  // facet leaves with its element
    BoundaryFacet nf = f;
    nf.tri = tri_map[f.tri];
    out.facets.push_back(nf);
  }

  // a removed boundary sliver exposes its neighbor's shared edge; that edge
  // takes over the sliver's marker so the weak boundary terms stay intact
  if (res.removed > 0) {
    std::vector<int> removed_marker(mesh.num_tris(), 0);
    for (const auto& f : mesh.facets)
      if (tri_map[f.tri] < 0) removed_marker[f.tri] = f.marker;
    std::map<EdgeKey, std::vector<std::pair<int, int>>> sides;
    for (int t = 0; t < mesh.num_tris(); ++t)
      for (int e = 0; e < 3; ++e)
        sides[edge_key(mesh.tris[t][e], mesh.tris[t][(e + 1) % 3])].push_back({t, e});
    for (int t = 0; t < mesh.num_tris(); ++t) {
      if (tri_map[t] >= 0 || removed_marker[t] == 0) continue;
      for (int e = 0; e < 3; ++e) {
        for (const auto& [t2, e2] :
             sides.at(edge_key(mesh.tris[t][e], mesh.tris[t][(e + 1) % 3]))) {
          if (t2 == t || tri_map[t2] < 0) continue;
          out.facets.push_back(
              {tri_map[t2], e2, removed_marker[t], outward_normal(out, tri_map[t2], e2)});
        }
      }
    }
  }
  out.eta = mesh_eta(out);
  return res;
}

}  // namespace ibfem
