#pragma once

#include <vector>

#include "ibfem/exec.hpp"

namespace ibfem {

// compressed sparse rows, column indices sorted and unique within each row
struct SparseMatrix {
  int rows = 0, cols = 0;
  std::vector<int> row_ptr;  // rows+1 offsets
  std::vector<int> col_idx;
  std::vector<double> vals;

  int nnz() const { return static_cast<int>(col_idx.size()); }
  double at(int i, int j) const;  // 0 when absent
};

struct TripletBuffer {
  std::vector<int> i, j;
  std::vector<double> v;

  void add(int row, int col, double val) {
    i.push_back(row);
    j.push_back(col);
    v.push_back(val);
  }
  size_t size() const { return v.size(); }
};

// duplicates are summed in insertion order; entries with |value| <= drop_tol
// (and denormal-tiny ones) are not stored
SparseMatrix csr_from_triplets(int rows, int cols, const TripletBuffer& t, double drop_tol = 0.0);

void matvec(const SparseMatrix& a, const double* x, double* y, Exec exec = Exec::parallel);
std::vector<double> matvec(const SparseMatrix& a, const std::vector<double>& x,
                           Exec exec = Exec::parallel);

SparseMatrix transpose(const SparseMatrix& a);

// CSR product with per-row sorted merge
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, Exec exec = Exec::parallel);

double frobenius_norm(const SparseMatrix& a);

// a - b, exact sparsity union (testing aid)
SparseMatrix subtract(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace ibfem
