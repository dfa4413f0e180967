#ifndef FRACOINT_TAPER_HPP
#define FRACOINT_TAPER_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace fracoint {

// Complex taper h_t = 0.5(1 - e^{i 2 pi t / n}) raised to the power p-1,
// cached per observation together with the unit-circle table the DFT uses.
// p = 1 is the no-taper case (all weights exactly one).
class TaperSpec {
public:
  TaperSpec(std::size_t n, int p);

  std::size_t n() const { return n_; }
  int p() const { return p_; }

  // h_t^{p-1} for t = 1..n at index t-1.
  const std::vector<std::complex<double>>& weights() const { return weights_; }

  double sum_sq_weights() const { return sum_sq_; }
  // 2 pi * sum_t |h_t^{p-1}|^2, the squared DFT normalizer.
  double normalizer() const { return normalizer_; }

  // Highest admissible frequency index: j per-taper must satisfy
  // j + p - 1 <= n - 1 so the taper's frequency-shift identity holds.
  long max_frequency() const { return static_cast<long>(n_) - p_; }

  // e^{i 2 pi k / n} with k reduced mod n; exact 1 at k = 0.
  std::complex<double> root(std::uint64_t k) const { return roots_[k % n_]; }

private:
  std::size_t n_ = 0;
  int p_ = 1;
  std::vector<std::complex<double>> weights_;
  std::vector<std::complex<double>> roots_;
  double sum_sq_ = 0.0;
  double normalizer_ = 0.0;
};

}  // namespace fracoint

#endif
