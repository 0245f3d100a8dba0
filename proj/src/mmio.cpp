#include "ibfem/mmio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ibfem/errors.hpp"

namespace ibfem {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_matrix_market(const std::string& path, const SparseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows << ' ' << m.cols << ' ' << m.nnz() << '\n';
  for (int i = 0; i < m.rows; ++i)
    for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k)
      out << i + 1 << ' ' << m.col_idx[k] + 1 << ' ' << fmt17(m.vals[k]) << '\n';
  if (!out) throw ConfigError("write failed for " + path);
}

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw ConfigError("not a MatrixMarket file: " + path);
  {
    std::istringstream hdr(line);
    std::string tag, obj, fmt, field, sym;
    hdr >> tag >> obj >> fmt >> field >> sym;
    if (obj != "matrix" || fmt != "coordinate" || field != "real" || sym != "general")
      throw ConfigError("unsupported MatrixMarket flavor in " + path);
  }
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '%') break;
  int rows = 0, cols = 0;
  long nnz = 0;
  {
    std::istringstream sz(line);
    if (!(sz >> rows >> cols >> nnz)) throw ConfigError("bad size line in " + path);
  }
  TripletBuffer t;
  for (long k = 0; k < nnz; ++k) {
    int i = 0, j = 0;
    double v = 0;
    if (!(in >> i >> j >> v)) throw ConfigError("truncated entry list in " + path);
    t.add(i - 1, j - 1, v);
  }
  return csr_from_triplets(rows, cols, t);
}

void write_vector_market(const std::string& path, const std::vector<double>& v) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  out << "%%MatrixMarket matrix array real general\n";
  out << v.size() << " 1\n";
  for (double x : v) out << fmt17(x) << '\n';
  if (!out) throw ConfigError("write failed for " + path);
}

std::vector<double> read_vector_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw ConfigError("not a MatrixMarket file: " + path);
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '%') break;
  long n = 0, one = 0;
  {
    std::istringstream sz(line);
    if (!(sz >> n >> one) || one != 1) throw ConfigError("bad size line in " + path);
  }
  std::vector<double> v(n);
  for (long k = 0; k < n; ++k)
    if (!(in >> v[k])) throw ConfigError("truncated entry list in " + path);
  return v;
}

}  // namespace ibfem
