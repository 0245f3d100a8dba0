#pragma once

#include <array>
#include <vector>

#include "ibfem/mesh.hpp"

namespace ibfem {

// Global Lagrange nodes of the foreground space: triangle vertices, plus edge
// midpoints for kappa=2. Coincident nodes are merged across elements by
// tolerant coordinate hashing; numbering follows first appearance in element
// order.
struct LagrangeDofMap {
  int kappa = 1;
  int nodes_per_element = 3;
  std::vector<Vec2> node_coords;
  std::vector<std::array<int, 6>> element_nodes;  // first nodes_per_element used

  int num_nodes() const { return static_cast<int>(node_coords.size()); }
};

LagrangeDofMap build_dofmap(const ForegroundMesh& mesh, int kappa);

// node id per mesh vertex (the vertex slots of the element node lists)
std::vector<int> vertex_nodes(const ForegroundMesh& mesh, const LagrangeDofMap& dofmap);

}  // namespace ibfem
