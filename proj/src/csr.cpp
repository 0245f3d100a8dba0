#include "ibfem/csr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ibfem/errors.hpp"

namespace ibfem {

double SparseMatrix::at(int i, int j) const {
  for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
    if (col_idx[k] == j) return vals[k];
  return 0.0;
}

SparseMatrix csr_from_triplets(int rows, int cols, const TripletBuffer& t, double drop_tol) {
  SparseMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(rows + 1, 0);

  std::vector<size_t> order(t.size());
  std::iota(order.begin(), order.end(), size_t{0});
  // stable under equal keys so duplicate entries sum in insertion order
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return t.i[a] != t.i[b] ? t.i[a] < t.i[b] : t.j[a] < t.j[b];
  });

  const double floor_tol = std::max(drop_tol, 1e-300);
  int last_i = -1, last_j = -1;
  for (size_t k = 0; k < order.size(); ++k) {
    const size_t o = order[k];
    if (t.i[o] < 0 || t.i[o] >= rows || t.j[o] < 0 || t.j[o] >= cols)
      throw SolverError("triplet index out of range");
    if (t.i[o] == last_i && t.j[o] == last_j) {
      m.vals.back() += t.v[o];
      continue;
    }
    // flush a previous entry that summed to (nearly) nothing
    if (!m.vals.empty() && std::fabs(m.vals.back()) <= floor_tol) {
      m.vals.pop_back();
      m.col_idx.pop_back();
      --m.row_ptr[last_i + 1];
    }
    last_i = t.i[o];
    last_j = t.j[o];
    m.col_idx.push_back(last_j);
    m.vals.push_back(t.v[o]);
    ++m.row_ptr[last_i + 1];
  }
  if (!m.vals.empty() && std::fabs(m.vals.back()) <= floor_tol) {
    m.vals.pop_back();
    m.col_idx.pop_back();
    --m.row_ptr[last_i + 1];
  }
  for (int r = 0; r < rows; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
  return m;
}

void matvec(const SparseMatrix& a, const double* x, double* y, Exec exec) {
  const int n = a.rows;
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) s += a.vals[k] * x[a.col_idx[k]];
    y[i] = s;
  }
}

std::vector<double> matvec(const SparseMatrix& a, const std::vector<double>& x, Exec exec) {
  if (static_cast<int>(x.size()) != a.cols) throw SolverError("matvec dimension mismatch");
  std::vector<double> y(a.rows);
  matvec(a, x.data(), y.data(), exec);
  return y;
}

SparseMatrix transpose(const SparseMatrix& a) {
  SparseMatrix t;
  t.rows = a.cols;
  t.cols = a.rows;
  t.row_ptr.assign(a.cols + 1, 0);
  for (int k = 0; k < a.nnz(); ++k) ++t.row_ptr[a.col_idx[k] + 1];
  for (int r = 0; r < t.rows; ++r) t.row_ptr[r + 1] += t.row_ptr[r];
  t.col_idx.resize(a.nnz());
  t.vals.resize(a.nnz());
  std::vector<int> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
  for (int i = 0; i < a.rows; ++i) {
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const int pos = next[a.col_idx[k]]++;
      t.col_idx[pos] = i;  // ascending i per column keeps rows sorted
      t.vals[pos] = a.vals[k];
    }
  }
  return t;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, Exec exec) {
  if (a.cols != b.rows) throw SolverError("sparse product dimension mismatch");
  const int n = a.rows;
  std::vector<std::vector<int>> row_cols(n);
  std::vector<std::vector<double>> row_vals(n);

#pragma omp parallel if (exec == Exec::parallel)
  {
    // dense accumulator per thread, reset via the touched list
    std::vector<double> acc(b.cols, 0.0);
    std::vector<int> touched;
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      touched.clear();
      for (int ka = a.row_ptr[i]; ka < a.row_ptr[i + 1]; ++ka) {
        const int j = a.col_idx[ka];
        const double av = a.vals[ka];
        for (int kb = b.row_ptr[j]; kb < b.row_ptr[j + 1]; ++kb) {
          const int c = b.col_idx[kb];
          if (acc[c] == 0.0) touched.push_back(c);
          acc[c] += av * b.vals[kb];
        }
      }
      // sorted merge makes the row independent of visit order
      std::sort(touched.begin(), touched.end());
      auto& rc = row_cols[i];
      auto& rv = row_vals[i];
      rc.reserve(touched.size());
      rv.reserve(touched.size());
      for (int c : touched) {
        if (acc[c] != 0.0) {
          rc.push_back(c);
          rv.push_back(acc[c]);
        }
        acc[c] = 0.0;
      }
    }
  }

  SparseMatrix m;
  m.rows = n;
  m.cols = b.cols;
  m.row_ptr.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) m.row_ptr[i + 1] = m.row_ptr[i] + static_cast<int>(row_cols[i].size());
  m.col_idx.reserve(m.row_ptr[n]);
  m.vals.reserve(m.row_ptr[n]);
  for (int i = 0; i < n; ++i) {
    m.col_idx.insert(m.col_idx.end(), row_cols[i].begin(), row_cols[i].end());
    m.vals.insert(m.vals.end(), row_vals[i].begin(), row_vals[i].end());
  }
  return m;
}

double frobenius_norm(const SparseMatrix& a) {
  double s = 0.0;
  for (double v : a.vals) s += v * v;
  return std::sqrt(s);
}

SparseMatrix subtract(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw SolverError("subtract dimension mismatch");
  TripletBuffer t;
  for (int i = 0; i < a.rows; ++i) {
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) t.add(i, a.col_idx[k], a.vals[k]);
    for (int k = b.row_ptr[i]; k < b.row_ptr[i + 1]; ++k) t.add(i, b.col_idx[k], -b.vals[k]);
  }
  return csr_from_triplets(a.rows, a.cols, t);
}

}  // namespace ibfem
