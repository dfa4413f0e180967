#ifndef FRACOINT_GSE_HPP
#define FRACOINT_GSE_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracoint/taper.hpp"

namespace fracoint {

// Taper-dependent variance constant Gamma(4p-3) Gamma^4(p) / Gamma^4(2p-1);
// the asymptotic variance of sqrt(m_n) (d_hat - d) is phi_p / 4.
double phi_p(int p);

struct GseConfig {
  std::size_t m_n = 0;    // bandwidth (number of ordinates)
  int p = 1;              // taper/differencing order, shared with TaperSpec
  double delta1 = 0.0;    // lower end of the optimization interval
  double delta2 = 0.0;    // upper end; -p + 1/2 < delta1 < delta2 < 1/2
  bool omit_low = true;   // skip the first m + p - 1 frequencies
  std::size_t m = 0;      // averaged-periodogram bandwidth (used when omit_low)

  // [-p + 0.51, 0.49], closed slightly inside the admissible open interval.
  static std::pair<double, double> default_interval(int p);
  void validate(std::size_t n, const char* stage) const;
  long first_frequency() const { return omit_low ? static_cast<long>(m) + p : 1; }
};

struct MemoryEstimate {
  double d_hat = 0.0;
  double se = 0.0;              // sqrt(phi_p / (4 m_n))
  std::size_t m_n = 0;
  double objective_min = 0.0;
  long band_first = 0, band_last = 0;  // frequency indices actually used
  bool converged = false;       // false when the optimum sits on the boundary
  std::string flag;             // "", "boundary_lower", "boundary_upper"
};

// Objective of the Gaussian semiparametric estimator,
//   R(d) = log Ghat(d) - 2d mean_j(log w_jtilde),
// with Ghat(d) = mean_j I(w_j) / w_jtilde^{-2d} and shifted frequencies
// w_jtilde = 2 pi (j + (p-1)/2) / n. The periodogram stays at the unshifted
// w_j; only the weights and the log-frequency mean use the shift. Evaluated
// in the centered form log mean_j I_j exp(2d (L_j - Lbar)), L_j = log w_jtilde,
// which equals R(d) exactly and keeps the exponents small.
double gse_objective(const std::vector<std::pair<long, double>>& ordinates,
                     double d, std::size_t n, int p);

// argmin of R over [delta1, delta2]: coarse 129-point grid, then golden
// section to an interval below 1e-7.
MemoryEstimate gse_estimate_from_ordinates(
    const std::vector<std::pair<long, double>>& ordinates, std::size_t n,
    const GseConfig& config);

MemoryEstimate gse_estimate(std::span<const double> residual,
                            const GseConfig& config, const TaperSpec& taper);

}  // namespace fracoint

#endif
