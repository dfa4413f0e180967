#include "fracoint/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fracoint/errors.hpp"

namespace fracoint {

EigenDecomposition eig_sym_desc(const Matrix& matrix) {
  const std::size_t q = matrix.rows();
  if (q == 0 || q != matrix.cols())
    throw numeric_error("eigensolver", "matrix must be square and non-empty");

  const double scale0 = std::max(matrix.max_abs(), 1.0);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j)
      if (std::abs(matrix(i, j) - matrix(j, i)) > 1e-8 * scale0)
        throw numeric_error("eigensolver", "input matrix is not symmetric");

  // Work on the symmetrized copy; accumulate rotations in v.
  Matrix a(q, q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      a(i, j) = 0.5 * (matrix(i, j) + matrix(j, i));
  Matrix v = Matrix::identity(q);

  double diag_scale = 0.0;
  for (std::size_t i = 0; i < q; ++i) diag_scale += std::abs(a(i, i));
  diag_scale = std::max(diag_scale, 1e-300);
  const double tol = 1e-12 * diag_scale;

  constexpr int kMaxSweeps = 100;
  bool converged = false;
  double off = 0.0;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    off = 0.0;
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = i + 1; j < q; ++j) off = std::max(off, std::abs(a(i, j)));
    if (off < tol) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < q; ++p) {
      for (std::size_t r = p + 1; r < q; ++r) {
        const double apr = a(p, r);
        if (apr == 0.0) continue;
        const double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < q; ++k) {
          const double akp = a(k, p);
          const double akr = a(k, r);
          a(k, p) = c * akp - s * akr;
          a(k, r) = s * akp + c * akr;
        }
        for (std::size_t k = 0; k < q; ++k) {
          const double apk = a(p, k);
          const double ark = a(r, k);
          a(p, k) = c * apk - s * ark;
          a(r, k) = s * apk + c * ark;
        }
        for (std::size_t k = 0; k < q; ++k) {
          const double vkp = v(k, p);
          const double vkr = v(k, r);
          v(k, p) = c * vkp - s * vkr;
          v(k, r) = s * vkp + c * vkr;
        }
      }
    }
  }
  if (!converged) {
    off = 0.0;
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = i + 1; j < q; ++j) off = std::max(off, std::abs(a(i, j)));
    if (off >= tol)
      throw numeric_error("eigensolver",
                          "Jacobi sweeps did not converge; off-diagonal residual " +
                              std::to_string(off / diag_scale) + " (relative)");
  }

  fix_column_signs(v);

  std::vector<std::size_t> order(q);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (a(x, x) != a(y, y)) return a(x, x) > a(y, y);
    // Exact eigenvalue tie: lexicographic on the sign-normalized vectors.
    for (std::size_t i = 0; i < q; ++i)
      if (v(i, x) != v(i, y)) return v(i, x) < v(i, y);
    return x < y;
  });

  EigenDecomposition out;
  out.source_trace = matrix.trace();
  out.eigenvalues.resize(q);
  out.eigenvectors = Matrix(q, q);
  for (std::size_t j = 0; j < q; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < q; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

}  // namespace fracoint
