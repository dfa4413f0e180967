#ifndef FRACOINT_SPECTRAL_HPP
#define FRACOINT_SPECTRAL_HPP

#include <complex>
#include <span>
#include <vector>

#include "fracoint/matrix.hpp"
#include "fracoint/taper.hpp"

namespace fracoint {

// order-fold first differences; order 0 is the identity.
SeriesMatrix difference(const SeriesMatrix& series, int order);

// Tapered discrete Fourier transform at the j-th Fourier frequency
// w_j = 2 pi j / n:
//   J(w_j) = normalizer^{-1/2} sum_t h_t^{p-1} x_t e^{i w_j t}.
// Direct O(n q) summation; the frequencies this library needs are far fewer
// than n, so no transform is involved.
std::vector<std::complex<double>> tapered_dft(const SeriesMatrix& series,
                                              const TaperSpec& taper, long j);

// |J(w_j)|^2 for a scalar series.
double univariate_tapered_periodogram(std::span<const double> series,
                                      const TaperSpec& taper, long j);

// Periodogram ordinates at j = j0 .. j0+count-1. The per-frequency sums are
// independent; the default evaluates them in an OpenMP loop, the _serial
// variant is the reference the tests compare against.
std::vector<double> univariate_ordinates(std::span<const double> series,
                                         const TaperSpec& taper, long j0,
                                         std::size_t count);
std::vector<double> univariate_ordinates_serial(std::span<const double> series,
                                                const TaperSpec& taper, long j0,
                                                std::size_t count);

struct AveragedPeriodogram {
  Matrix matrix;       // sum_{j=1..m} Re{J J*}, real symmetric PSD
  std::size_t m = 0;
  // DFT vectors J(w_j), j = 1..m, kept for diagnostics.
  std::vector<std::vector<std::complex<double>>> per_frequency;
};

// m > q + 3 is required unless allow_small_m is set explicitly.
AveragedPeriodogram averaged_periodogram(const SeriesMatrix& series,
                                         const TaperSpec& taper, std::size_t m,
                                         bool allow_small_m = false);

}  // namespace fracoint

#endif
