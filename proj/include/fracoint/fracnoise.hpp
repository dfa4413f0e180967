#ifndef FRACOINT_FRACNOISE_HPP
#define FRACOINT_FRACNOISE_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace fracoint {

// MA(inf) coefficients of (1-L)^{-d}: psi_0 = 1, psi_j = psi_{j-1}(j-1+d)/j.
std::vector<double> frac_ma_coeffs(std::size_t count, double d);

// Causal filter y[t] = sum_{j=0..t} psi[j] eps[t-j] (psi beyond its length is
// zero). Three interchangeable kernels: a plain serial reference, an OpenMP
// version parallel over outputs, and an FFT-accelerated linear convolution.
// They agree to rounding error; tests pin the serial one as the reference.
void ma_filter_serial(std::span<const double> psi, std::span<const double> eps,
                      std::span<double> out);
void ma_filter_omp(std::span<const double> psi, std::span<const double> eps,
                   std::span<double> out);
void ma_filter_fft(std::span<const double> psi, std::span<const double> eps,
                   std::span<double> out);

// Dispatch: direct summation for short inputs, FFT otherwise.
std::vector<double> ma_filter(std::span<const double> psi,
                              std::span<const double> eps);

// Length-n fractional noise with memory parameter d, from seeded standard
// Gaussian innovations, discarding burn_in warm-up outputs. |d| < 1/2 runs
// the filter directly; d <= -1/2 is realized as the integer difference of a
// series with memory d + k. d >= 1/2 is rejected.
std::vector<double> frac_noise(std::size_t n, double d, std::uint64_t seed,
                               std::size_t burn_in);

// Same, but drawing innovations from an already-positioned stream of values
// (used by the model simulator to share innovations across columns).
std::vector<double> frac_noise_from_innovations(std::span<const double> innovations,
                                                std::size_t n, double d);

// Number of integer differences needed to bring d into (-1/2, 1/2); throws
// config_error when impossible (d >= 1/2 or d + k lands exactly on +-1/2).
int integer_shift_for_memory(double d);

}  // namespace fracoint

#endif
