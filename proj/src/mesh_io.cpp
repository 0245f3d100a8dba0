#include "ibfem/mesh_io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "ibfem/errors.hpp"

namespace ibfem {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_vtk(const std::string& path, const ForegroundMesh& mesh,
               const std::vector<double>* vertex_field, const std::string& field_name) {
  if (vertex_field && static_cast<int>(vertex_field->size()) != mesh.num_vertices())
    throw ConfigError("point data length does not match the vertex count");
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  out << "# vtk DataFile Version 3.0\n";
  out << "foreground mesh\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (const Vec2& v : mesh.vertices)
    out << format_g17(v.x) << ' ' << format_g17(v.y) << " 0\n";
  out << "CELLS " << mesh.num_tris() << ' ' << 4 * mesh.num_tris() << '\n';
  for (const auto& t : mesh.tris) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << mesh.num_tris() << '\n';
  for (int t = 0; t < mesh.num_tris(); ++t) out << "5\n";
  out << "CELL_DATA " << mesh.num_tris() << '\n';
  out << "SCALARS parent_cell int 1\nLOOKUP_TABLE default\n";
  for (int t = 0; t < mesh.num_tris(); ++t)
    out << (t < static_cast<int>(mesh.parent_cell.size()) ? mesh.parent_cell[t] : -1) << '\n';
  if (vertex_field) {
    out << "POINT_DATA " << mesh.num_vertices() << '\n';
    out << "SCALARS " << field_name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : *vertex_field) out << format_g17(v) << '\n';
  }
  if (!out) throw ConfigError("write failed for " + path);
}

void write_mesh_json(const std::string& path, const ForegroundMesh& mesh) {
  nlohmann::json j;
  auto& verts = j["vertices"] = nlohmann::json::array();
  for (const Vec2& v : mesh.vertices) verts.push_back({v.x, v.y});
  auto& tris = j["triangles"] = nlohmann::json::array();
  for (const auto& t : mesh.tris) tris.push_back({t[0], t[1], t[2]});
  auto& facets = j["facets"] = nlohmann::json::array();
  for (const auto& f : mesh.facets)
    facets.push_back({{"tri", f.tri}, {"edge", f.edge}, {"marker", f.marker}});
  j["parent_cell"] = mesh.parent_cell;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  out << j.dump(1) << '\n';
  if (!out) throw ConfigError("write failed for " + path);
}

ForegroundMesh read_mesh_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
  ForegroundMesh mesh;
  try {
    for (const auto& v : j.at("vertices"))
      mesh.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    for (const auto& t : j.at("triangles"))
      mesh.tris.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    for (const auto& f : j.at("facets")) {
      BoundaryFacet bf;
      bf.tri = f.at("tri").get<int>();
      bf.edge = f.at("edge").get<int>();
      bf.marker = f.at("marker").get<int>();
      mesh.facets.push_back(bf);
    }
    mesh.parent_cell = j.at("parent_cell").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed mesh in " + path + ": " + e.what());
  }
  for (auto& f : mesh.facets) {
    if (f.tri < 0 || f.tri >= mesh.num_tris() || f.edge < 0 || f.edge > 2)
      throw ConfigError("facet out of range in " + path);
    f.normal = outward_normal(mesh, f.tri, f.edge);
  }
  mesh.eta = mesh_eta(mesh);
  validate_mesh(mesh);
  return mesh;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  if (!out) throw ConfigError("write failed for " + path);
}

}  // namespace ibfem
