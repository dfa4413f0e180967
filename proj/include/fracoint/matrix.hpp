#ifndef FRACOINT_MATRIX_HPP
#define FRACOINT_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace fracoint {

// Dense row-major matrix sized for the cross-sectional dimension (a few tens
// at most). Only the operations the estimators need, nothing more.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transposed() const;
  Matrix operator*(const Matrix& rhs) const;

  std::vector<double> column(std::size_t j) const;
  void set_column(std::size_t j, const std::vector<double>& v);

  double frobenius_norm() const;
  double max_abs() const;
  double trace() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// a' * b without forming the transpose.
Matrix matmul_transA(const Matrix& a, const Matrix& b);

// Lower Cholesky factor; throws numeric_error if the input is not symmetric
// positive definite.
Matrix cholesky_lower(const Matrix& spd, const char* stage = "cholesky");

// Column-sign convention shared by every orthonormal basis in the project:
// the first component of largest absolute value is made positive.
void fix_column_signs(Matrix& m);

// Orthogonalizes v against the first `used` columns of q (two Gram-Schmidt
// passes), normalizes, and stores it as column `used`. Returns false when the
// residual is below pivot_tol * ||v|| (v numerically dependent).
bool gs_append_column(Matrix& q, std::size_t used, const std::vector<double>& v,
                      double pivot_tol);

// Orthonormal basis of the orthogonal complement of the column space of t,
// built by completing t to a q-frame with canonical vectors (pivot 1e-8).
Matrix complete_to_frame(const Matrix& t);

// max |(m'm - I)_ij|; used for orthonormality checks.
double orthonormality_defect(const Matrix& m);

// Column-major time-series matrix: column c is one component series.
class SeriesMatrix {
public:
  SeriesMatrix() = default;
  SeriesMatrix(std::size_t n, std::size_t q) : n_(n), q_(q), data_(n * q, 0.0) {}

  std::size_t n() const { return n_; }
  std::size_t q() const { return q_; }

  double& at(std::size_t t, std::size_t c) { return data_[c * n_ + t]; }
  double at(std::size_t t, std::size_t c) const { return data_[c * n_ + t]; }

  std::span<const double> column(std::size_t c) const {
    return {data_.data() + c * n_, n_};
  }
  std::span<double> column(std::size_t c) { return {data_.data() + c * n_, n_}; }

  // data_error on non-finite entries or n < 2 / q < 1.
  void validate(const char* stage) const;

private:
  std::size_t n_ = 0, q_ = 0;
  std::vector<double> data_;
};

// out_t = M * in_t applied row-wise; M is (k x q), in is (n x q), out (n x k).
SeriesMatrix apply_rowwise(const SeriesMatrix& in, const Matrix& m);

}  // namespace fracoint

#endif
