#ifndef FRACOINT_SUBSPACE_HPP
#define FRACOINT_SUBSPACE_HPP

#include <cstddef>
#include <vector>

#include "fracoint/eigensolve.hpp"
#include "fracoint/matrix.hpp"

namespace fracoint {

// Grouping (a_0, ..., a_s) of the q eigenvalue-ordered directions into s+1
// contiguous blocks; block 0 carries the largest eigenvalues, block s the
// smallest (the most-cointegrating estimated subspace).
struct SubspacePartition {
  std::vector<std::size_t> sizes;

  std::size_t s() const { return sizes.empty() ? 0 : sizes.size() - 1; }
  std::size_t total() const;
  // index of the block containing eigenvalue-ordered position `col` (0-based)
  std::size_t group_of(std::size_t col) const;
  void validate(std::size_t q, const char* stage) const;
  bool operator==(const SubspacePartition&) const = default;
};

std::vector<Matrix> group_eigenvectors(const EigenDecomposition& decomp,
                                       const SubspacePartition& partition);

// w_t = X' y_t applied row-wise; column a of the result is the residual
// process for eigenvector a. X must be orthogonal to 1e-8.
SeriesMatrix residual_series(const SeriesMatrix& series, const Matrix& x);

// ||sin Theta(M(S), M(T))||_F, computed as ||(T_perp)' S||_F with T_perp an
// orthonormal basis of the complement of M(T). Symmetric in its arguments and
// invariant under orthogonal recombination of either basis.
double subspace_sin_theta(const Matrix& s, const Matrix& t);

}  // namespace fracoint

#endif
