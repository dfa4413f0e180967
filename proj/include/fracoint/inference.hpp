#ifndef FRACOINT_INFERENCE_HPP
#define FRACOINT_INFERENCE_HPP

#include <cstddef>
#include <vector>

#include "fracoint/subspace.hpp"

namespace fracoint {

// Standard normal quantile, rational approximation of Wichura (1988),
// Algorithm AS 241 (PPND16); accurate far beyond the 1e-9 this project needs.
double normal_quantile(double prob);

// Standard normal CDF via erfc.
double normal_cdf(double z);

// Gap rule for splitting the eigenvalue-ordered memory estimates into
// subspaces: a boundary after position j iff d_j - d_{j+1} > C m_n^{-1/2+eps}.
struct IdentificationRule {
  double C = 2.0;
  double epsilon = 0.1;

  double threshold(std::size_t m_n) const;
  void validate(const char* stage) const;
};

// d_hats must be in eigenvalue order (column order of X); they are not
// re-sorted, and negative gaps never create boundaries.
SubspacePartition identify_partition(const std::vector<double>& d_hats,
                                     std::size_t m_n,
                                     const IdentificationRule& rule);

struct TestResult {
  double T_n = 0.0;
  double critical_value = 0.0;  // sqrt(phi_p / 2) z_{alpha/2}
  double alpha = 0.0;
  bool reject = false;
  // Upper bound on the one-sided p-value; the variance bound phi_p/2 makes the
  // test conservative, so this is never an exact p-value.
  double conservative_p_upper = 1.0;
};

// Null of no fractional cointegration against the cointegration alternative:
// T_n = sqrt(m_n) (d_first - d_last), rejected iff T_n exceeds the
// conservative critical value.
TestResult cointegration_test(double d_hat_first, double d_hat_last,
                              std::size_t m_n, int p, double alpha);

}  // namespace fracoint

#endif
