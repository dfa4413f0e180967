#ifndef FRACOINT_EIGENSOLVE_HPP
#define FRACOINT_EIGENSOLVE_HPP

#include <vector>

#include "fracoint/matrix.hpp"

namespace fracoint {

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // column j paired with eigenvalues[j]
  double source_trace = 0.0;
};

// Dense symmetric eigendecomposition by cyclic Jacobi rotations (the matrices
// here are q x q with q at most a few tens). Converged when every
// off-diagonal magnitude falls below 1e-12 times the absolute diagonal sum
// (the trace, for PSD input); capped at 100 sweeps. Eigenvalues are sorted
// descending; exact ties are broken lexicographically on the sign-normalized
// eigenvector components so output is deterministic.
EigenDecomposition eig_sym_desc(const Matrix& matrix);

}  // namespace fracoint

#endif
