#include "sse/bigfloat.hpp"

namespace sse {

double solve_dense(std::vector<BigComplex>& A, std::vector<BigComplex>& b,
                   int n, std::vector<BigComplex>& z) {
  if (static_cast<int>(A.size()) != n * n || static_cast<int>(b.size()) != n)
    throw std::invalid_argument("solve_dense: shape mismatch");
  std::vector<BigComplex> A0 = A, b0 = b;

  for (int k = 0; k < n; ++k) {
    int piv = k;
    BigFloat best = norm1(A[k * n + k]);
    for (int i = k + 1; i < n; ++i) {
      BigFloat m = norm1(A[i * n + k]);
      if (m > best) { best = m; piv = i; }
    }
    if (best == 0) throw std::runtime_error("solve_dense: singular matrix");
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(A[k * n + j], A[piv * n + j]);
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      BigComplex f = A[i * n + k] / A[k * n + k];
      if (f.re == 0 && f.im == 0) continue;
      for (int j = k + 1; j < n; ++j)
        A[i * n + j] = A[i * n + j] - f * A[k * n + j];
      b[i] = b[i] - f * b[k];
    }
  }
  z.assign(n, BigComplex{BigFloat(0), BigFloat(0)});
  for (int i = n - 1; i >= 0; --i) {
    BigComplex s = b[i];
    for (int j = i + 1; j < n; ++j) s = s - A[i * n + j] * z[j];
    z[i] = s / A[i * n + i];
  }

  // scaled residual against the untouched copies
  BigFloat rmax(0), anorm(0), znorm(0), bnorm(0);
  for (int i = 0; i < n; ++i) {
    BigComplex r = b0[i];
    BigFloat row(0);
    for (int j = 0; j < n; ++j) {
      r = r - A0[i * n + j] * z[j];
      row += norm1(A0[i * n + j]);
    }
    if (norm1(r) > rmax) rmax = norm1(r);
    if (row > anorm) anorm = row;
    if (norm1(z[i]) > znorm) znorm = norm1(z[i]);
    if (norm1(b0[i]) > bnorm) bnorm = norm1(b0[i]);
  }
  BigFloat denom = anorm * znorm + bnorm;
  if (denom == 0) return rmax == 0 ? 0.0 : HUGE_VAL;
  return static_cast<double>(rmax / denom);
}

}  // namespace sse
