#pragma once

#include <string>
#include <vector>

#include "ibfem/mesh.hpp"

namespace ibfem {

// legacy ASCII unstructured grid; parent_cell goes out as cell data and the
// optional per-vertex field as point data
void write_vtk(const std::string& path, const ForegroundMesh& mesh,
               const std::vector<double>* vertex_field = nullptr,
               const std::string& field_name = "u");

// round-trip mesh serialization; normals and eta are recomputed on read
void write_mesh_json(const std::string& path, const ForegroundMesh& mesh);
ForegroundMesh read_mesh_json(const std::string& path);

// shortest representation that round-trips a double exactly
std::string format_g17(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace ibfem
