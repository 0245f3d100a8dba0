#pragma once

#include <string>

#include "ibfem/csr.hpp"

namespace ibfem {

// coordinate real general format, 1-based indices
void write_matrix_market(const std::string& path, const SparseMatrix& m);
SparseMatrix read_matrix_market(const std::string& path);

void write_vector_market(const std::string& path, const std::vector<double>& v);
std::vector<double> read_vector_market(const std::string& path);

}  // namespace ibfem
