#include "fracoint/fracnoise.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "fracoint/errors.hpp"
#include "fracoint/rng.hpp"

namespace fracoint {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Iterative radix-2 Cooley-Tukey with a precomputed twiddle table.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n < 2) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<std::complex<double>> tw(n / 2);
  const double sgn = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n / 2; ++k)
    tw[k] = std::polar(1.0, sgn * 2.0 * kPi * static_cast<double>(k) /
                                static_cast<double>(n));
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * tw[k * stride];
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= inv;
  }
}

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

}  // namespace

std::vector<double> frac_ma_coeffs(std::size_t count, double d) {
  std::vector<double> psi(count);
  if (count == 0) return psi;
  psi[0] = 1.0;
  for (std::size_t j = 1; j < count; ++j)
    psi[j] = psi[j - 1] * (static_cast<double>(j) - 1.0 + d) /
             static_cast<double>(j);
  return psi;
}

void ma_filter_serial(std::span<const double> psi, std::span<const double> eps,
                      std::span<double> out) {
  const std::size_t n = eps.size();
  const std::size_t p = psi.size();
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t jmax = std::min(t + 1, p);
    double acc = 0.0;
    for (std::size_t j = 0; j < jmax; ++j) acc += psi[j] * eps[t - j];
    out[t] = acc;
  }
}

void ma_filter_omp(std::span<const double> psi, std::span<const double> eps,
                   std::span<double> out) {
  const std::size_t n = eps.size();
  const std::size_t p = psi.size();
  // Interleaved chunks: the work per output grows with t, so plain static
  // scheduling would leave the first thread mostly idle.
#pragma omp parallel for schedule(static, 64)
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t jmax = std::min(t + 1, p);
    double acc = 0.0;
    for (std::size_t j = 0; j < jmax; ++j) acc += psi[j] * eps[t - j];
    out[t] = acc;
  }
}

void ma_filter_fft(std::span<const double> psi, std::span<const double> eps,
                   std::span<double> out) {
  const std::size_t n = eps.size();
  const std::size_t p = psi.size();
  if (n == 0) return;
  const std::size_t size = next_pow2(n + p - 1);
  std::vector<std::complex<double>> fa(size), fb(size);
  for (std::size_t i = 0; i < p; ++i) fa[i] = psi[i];
  for (std::size_t i = 0; i < n; ++i) fb[i] = eps[i];
  fft_inplace(fa, false);
  fft_inplace(fb, false);
  for (std::size_t i = 0; i < size; ++i) fa[i] *= fb[i];
  fft_inplace(fa, true);
  for (std::size_t t = 0; t < n; ++t) out[t] = fa[t].real();
}

std::vector<double> ma_filter(std::span<const double> psi,
                              std::span<const double> eps) {
  std::vector<double> out(eps.size());
  if (eps.size() < 2048)
    ma_filter_serial(psi, eps, out);
  else
    ma_filter_fft(psi, eps, out);
  return out;
}

int integer_shift_for_memory(double d) {
  if (d >= 0.5)
    throw config_error("frac_noise",
                       "memory parameter d = " + std::to_string(d) +
                           " is outside the representable range (d < 1/2)");
  int k = 0;
  double dd = d;
  while (dd <= -0.5) {
    dd += 1.0;
    ++k;
  }
  if (dd >= 0.5)
    throw config_error("frac_noise",
                       "memory parameter d = " + std::to_string(d) +
                           " sits exactly on a half-integer and cannot be "
                           "reached by integer differencing");
  return k;
}

std::vector<double> frac_noise_from_innovations(std::span<const double> innovations,
                                                std::size_t n, double d) {
  const int k = integer_shift_for_memory(d);
  const double dd = d + static_cast<double>(k);
  const std::size_t want = n + static_cast<std::size_t>(k);
  if (innovations.size() < want)
    throw config_error("frac_noise", "innovation stream shorter than n + shift");

  std::vector<double> x;
  if (dd == 0.0) {
    // Identity filter; emit the innovations themselves.
    x.assign(innovations.end() - static_cast<std::ptrdiff_t>(want),
             innovations.end());
  } else {
    const std::vector<double> psi = frac_ma_coeffs(innovations.size(), dd);
    std::vector<double> full = ma_filter(psi, innovations);
    x.assign(full.end() - static_cast<std::ptrdiff_t>(want), full.end());
  }
  for (int pass = 0; pass < k; ++pass) {
    for (std::size_t t = 0; t + 1 < x.size(); ++t) x[t] = x[t + 1] - x[t];
    x.pop_back();
  }
  return x;
}

std::vector<double> frac_noise(std::size_t n, double d, std::uint64_t seed,
                               std::size_t burn_in) {
  if (n < 1) throw config_error("frac_noise", "series length must be positive");
  const int k = integer_shift_for_memory(d);
  const std::size_t total = burn_in + n + static_cast<std::size_t>(k);
  GaussianStream g(seed);
  std::vector<double> eps(total);
  for (auto& e : eps) e = g.next();
  return frac_noise_from_innovations(eps, n, d);
}

}  // namespace fracoint
