#include "fracoint/matrix.hpp"

#include <cmath>
#include <string>

#include "fracoint/errors.hpp"

namespace fracoint {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw numeric_error("matrix", "dimension mismatch in matrix product");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
    }
  return out;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const std::vector<double>& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double s = 0.0;
  for (double x : data_) s = std::max(s, std::abs(x));
  return s;
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

Matrix matmul_transA(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows())
    throw numeric_error("matrix", "dimension mismatch in transposed product");
  Matrix out(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.rows(); ++k) s += a(k, i) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

Matrix cholesky_lower(const Matrix& spd, const char* stage) {
  const std::size_t n = spd.rows();
  if (n != spd.cols()) throw numeric_error(stage, "cholesky: matrix not square");
  const double scale = spd.max_abs();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(spd(i, j) - spd(j, i)) > 1e-10 * std::max(1.0, scale))
        throw numeric_error(stage, "cholesky: matrix not symmetric");
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = spd(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (diag <= 0.0)
      throw numeric_error(stage, "cholesky: matrix not positive definite");
    l(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = spd(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

void fix_column_signs(Matrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const double a = std::abs(m(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (m(arg, j) < 0.0)
      for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
  }
}

bool gs_append_column(Matrix& q, std::size_t used, const std::vector<double>& v,
                      double pivot_tol) {
  const std::size_t n = q.rows();
  std::vector<double> w = v;
  double norm0 = 0.0;
  for (double x : w) norm0 += x * x;
  norm0 = std::sqrt(norm0);
  if (norm0 == 0.0) return false;

  // Two passes of modified Gram-Schmidt keep the frame orthonormal to
  // working precision.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t c = 0; c < used; ++c) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += q(i, c) * w[i];
      for (std::size_t i = 0; i < n; ++i) w[i] -= dot * q(i, c);
    }
  }
  double norm = 0.0;
  for (double x : w) norm += x * x;
  norm = std::sqrt(norm);
  if (norm <= pivot_tol * norm0) return false;
  for (std::size_t i = 0; i < n; ++i) q(i, used) = w[i] / norm;
  return true;
}

Matrix complete_to_frame(const Matrix& t) {
  const std::size_t q = t.rows();
  const std::size_t a = t.cols();
  if (a > q) throw numeric_error("subspace", "basis has more columns than rows");
  Matrix frame(q, q);
  for (std::size_t j = 0; j < a; ++j)
    for (std::size_t i = 0; i < q; ++i) frame(i, j) = t(i, j);
  std::size_t used = a;
  std::vector<double> e(q, 0.0);
  for (std::size_t k = 0; k < q && used < q; ++k) {
    e.assign(q, 0.0);
    e[k] = 1.0;
    if (gs_append_column(frame, used, e, 1e-8)) ++used;
  }
  if (used != q)
    throw numeric_error("subspace", "failed to complete orthonormal frame");
  Matrix comp(q, q - a);
  for (std::size_t j = a; j < q; ++j)
    for (std::size_t i = 0; i < q; ++i) comp(i, j - a) = frame(i, j);
  return comp;
}

double orthonormality_defect(const Matrix& m) {
  const Matrix g = matmul_transA(m, m);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const double target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g(i, j) - target));
    }
  return worst;
}

void SeriesMatrix::validate(const char* stage) const {
  if (n_ < 2) throw data_error(stage, "series needs at least 2 observations");
  if (q_ < 1) throw data_error(stage, "series needs at least 1 column");
  for (std::size_t c = 0; c < q_; ++c)
    for (std::size_t t = 0; t < n_; ++t)
      if (!std::isfinite(at(t, c)))
        throw data_error(stage, "non-finite value at row " + std::to_string(t + 1) +
                                    ", column " + std::to_string(c + 1));
}

SeriesMatrix apply_rowwise(const SeriesMatrix& in, const Matrix& m) {
  if (m.cols() != in.q())
    throw numeric_error("matrix", "dimension mismatch in row-wise transform");
  SeriesMatrix out(in.n(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto dest = out.column(i);
    for (std::size_t c = 0; c < in.q(); ++c) {
      const double mic = m(i, c);
      if (mic == 0.0) continue;
      auto src = in.column(c);
      for (std::size_t t = 0; t < in.n(); ++t) dest[t] += mic * src[t];
    }
  }
  return out;
}

}  // namespace fracoint
