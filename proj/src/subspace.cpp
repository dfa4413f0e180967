#include "fracoint/subspace.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "fracoint/errors.hpp"

namespace fracoint {

std::size_t SubspacePartition::total() const {
  return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
}

std::size_t SubspacePartition::group_of(std::size_t col) const {
  std::size_t acc = 0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    acc += sizes[k];
    if (col < acc) return k;
  }
  return sizes.empty() ? 0 : sizes.size() - 1;
}

void SubspacePartition::validate(std::size_t q, const char* stage) const {
  if (sizes.empty()) throw config_error(stage, "partition has no groups");
  for (std::size_t a : sizes)
    if (a < 1) throw config_error(stage, "every partition group needs size >= 1");
  if (total() != q)
    throw config_error(stage, "partition sizes sum to " + std::to_string(total()) +
                                  ", expected q = " + std::to_string(q));
}

std::vector<Matrix> group_eigenvectors(const EigenDecomposition& decomp,
                                       const SubspacePartition& partition) {
  const std::size_t q = decomp.eigenvectors.rows();
  partition.validate(q, "group_eigenvectors");
  std::vector<Matrix> groups;
  groups.reserve(partition.sizes.size());
  std::size_t first = 0;
  for (std::size_t a : partition.sizes) {
    Matrix g(q, a);
    for (std::size_t j = 0; j < a; ++j)
      for (std::size_t i = 0; i < q; ++i) g(i, j) = decomp.eigenvectors(i, first + j);
    groups.push_back(std::move(g));
    first += a;
  }
  return groups;
}

SeriesMatrix residual_series(const SeriesMatrix& series, const Matrix& x) {
  if (x.rows() != series.q() || x.cols() != series.q())
    throw numeric_error("residuals", "eigenvector matrix does not match series width");
  if (orthonormality_defect(x) > 1e-8)
    throw numeric_error("residuals", "eigenvector matrix is not orthogonal");
  return apply_rowwise(series, x.transposed());
}

double subspace_sin_theta(const Matrix& s, const Matrix& t) {
  if (s.rows() != t.rows())
    throw numeric_error("sin_theta", "bases live in different ambient dimensions");
  if (s.cols() != t.cols())
    throw numeric_error("sin_theta", "bases have different column counts");
  if (s.cols() == 0 || s.cols() > s.rows())
    throw numeric_error("sin_theta", "basis column count out of range");
  if (orthonormality_defect(s) > 1e-8 || orthonormality_defect(t) > 1e-8)
    throw numeric_error("sin_theta", "inputs must have orthonormal columns");
  if (s.cols() == s.rows()) return 0.0;  // both span the whole space
  const Matrix t_perp = complete_to_frame(t);
  return matmul_transA(t_perp, s).frobenius_norm();
}

}  // namespace fracoint
