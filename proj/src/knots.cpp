#include "ibfem/knots.hpp"

#include <algorithm>
#include <cstring>

#include "ibfem/errors.hpp"

namespace ibfem {

KnotVector make_open_uniform_knots(int degree, int n_spans, double a, double b) {
  if (degree < 1 || degree > 4) throw ConfigError("knot vector degree must be in [1,4]");
  if (n_spans < 1) throw ConfigError("knot vector needs at least one span");
  if (!(a < b)) throw ConfigError("knot vector interval is empty");
  KnotVector kv;
  kv.degree = degree;
  kv.knots.reserve(n_spans + 2 * degree + 1);
  for (int i = 0; i <= degree; ++i) kv.knots.push_back(a);
  const double dx = (b - a) / n_spans;
  for (int i = 1; i < n_spans; ++i) kv.knots.push_back(a + i * dx);
  for (int i = 0; i <= degree; ++i) kv.knots.push_back(b);
  return kv;
}

int find_span(const KnotVector& kv, double x) {
  const int p = kv.degree;
  const int n = kv.num_basis();
  if (x >= kv.knots[n]) return n - 1;
  if (x <= kv.knots[p]) return p;
  // knots[i] <= x < knots[i+1]
  auto it = std::upper_bound(kv.knots.begin() + p, kv.knots.begin() + n, x);
  return static_cast<int>(it - kv.knots.begin()) - 1;
}

SplineBasis1D eval_bspline_1d(const KnotVector& kv, double x, int nder) {
  const int p = kv.degree;
  const auto& U = kv.knots;
  const int span = find_span(kv, x);

  // Cox-de Boor triangular table; ndu upper triangle holds basis values,
  // lower triangle the knot differences
  double ndu[5][5], left[5], right[5];
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - U[span + 1 - j];
    right[j] = U[span + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }

  SplineBasis1D out;
  out.first = span - p;
  out.count = p + 1;
  for (int j = 0; j <= p; ++j) out.val[j] = ndu[j][p];
  if (nder < 1) return out;

  const int nd = std::min(nder, p);  // derivatives beyond the degree vanish
  double ders[3][5];
  std::memset(ders, 0, sizeof(ders));
  double a[2][5];
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= nd; ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        d = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        d += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        d += a[s2][k] * ndu[r][pk];
      }
      ders[k][r] = d;
      std::swap(s1, s2);
    }
  }
  double fac = p;
  for (int k = 1; k <= nd; ++k) {
    for (int j = 0; j <= p; ++j) ders[k][j] *= fac;
    fac *= (p - k);
  }
  for (int j = 0; j <= p; ++j) out.d1[j] = ders[1][j];
  if (nder >= 2)
    for (int j = 0; j <= p; ++j) out.d2[j] = ders[2][j];
  return out;
}

std::vector<double> greville_abscissae(const KnotVector& kv) {
  const int p = kv.degree;
  std::vector<double> g(kv.num_basis());
  for (int i = 0; i < kv.num_basis(); ++i) {
    double s = 0.0;
    for (int j = 1; j <= p; ++j) s += kv.knots[i + j];
    g[i] = s / p;
  }
  return g;
}

}  // namespace ibfem
