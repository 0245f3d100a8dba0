#include "ibfem/dofmap.hpp"

#include <cmath>
#include <unordered_map>

#include "ibfem/errors.hpp"
#include "ibfem/foreground_shape.hpp"

namespace ibfem {

namespace {

// tolerant spatial hash: points within tol of each other share a node
struct NodeMerge {
  double cell;
  std::vector<Vec2>& coords;
  std::unordered_map<long long, std::vector<int>> buckets;

  NodeMerge(double tol, std::vector<Vec2>& c) : cell(std::max(tol, 1e-300)), coords(c) {}

  long long key(double x) const { return static_cast<long long>(std::floor(x / cell)); }

  int find_or_insert(Vec2 p, double tol) {
    const long long kx = key(p.x), ky = key(p.y);
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find((kx + dx) * 1000003LL + (ky + dy));
        if (it == buckets.end()) continue;
        for (int id : it->second) {
          const Vec2 d = coords[id] - p;
          if (std::fabs(d.x) <= tol && std::fabs(d.y) <= tol) return id;
        }
      }
    }
    const int id = static_cast<int>(coords.size());
    coords.push_back(p);
    buckets[kx * 1000003LL + ky].push_back(id);
    return id;
  }
};

}  // namespace

LagrangeDofMap build_dofmap(const ForegroundMesh& mesh, int kappa) {
  LagrangeDofMap dm;
  dm.kappa = kappa;
  dm.nodes_per_element = foreground_nodes_per_element(kappa);
  if (mesh.tris.empty()) throw GeometryError("cannot number nodes of an empty mesh");

  const double tol = 1e-10 * (mesh.eta > 0 ? mesh.eta : mesh_eta(mesh));
  NodeMerge merge(tol, dm.node_coords);
  dm.element_nodes.resize(mesh.tris.size());

  for (int t = 0; t < mesh.num_tris(); ++t) {
    const auto& tri = mesh.tris[t];
    const Vec2 v[3] = {mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]};
    auto& en = dm.element_nodes[t];
    for (int a = 0; a < 3; ++a) en[a] = merge.find_or_insert(v[a], tol);
    if (kappa == 2) {
      en[3] = merge.find_or_insert((v[0] + v[1]) * 0.5, tol);
      en[4] = merge.find_or_insert((v[1] + v[2]) * 0.5, tol);
      en[5] = merge.find_or_insert((v[2] + v[0]) * 0.5, tol);
    }
  }
  return dm;
}

std::vector<int> vertex_nodes(const ForegroundMesh& mesh, const LagrangeDofMap& dofmap) {
  std::vector<int> node_of(mesh.num_vertices(), -1);
  for (int t = 0; t < mesh.num_tris(); ++t)
    for (int a = 0; a < 3; ++a) node_of[mesh.tris[t][a]] = dofmap.element_nodes[t][a];
  return node_of;
}

}  // namespace ibfem
