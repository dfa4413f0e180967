#include "fracoint/spectral.hpp"

#include <cmath>
#include <string>

#include "fracoint/errors.hpp"

namespace fracoint {

namespace {

void check_frequency(const TaperSpec& taper, long j) {
  if (j < 1 || j > taper.max_frequency())
    throw config_error("spectral",
                       "frequency index " + std::to_string(j) +
                           " outside the admissible range [1, " +
                           std::to_string(taper.max_frequency()) + "]");
}

// One tapered DFT sum over a contiguous column. The rotation e^{i w_j t} is
// read from the taper's unit-circle table at index (j t) mod n, tracked
// incrementally to avoid the division.
std::complex<double> dft_column(std::span<const double> x, const TaperSpec& taper,
                                long j) {
  const std::size_t n = taper.n();
  const auto& w = taper.weights();
  std::complex<double> acc{0.0, 0.0};
  std::size_t k = static_cast<std::size_t>(j) % n;
  const std::size_t step = static_cast<std::size_t>(j) % n;
  for (std::size_t t = 0; t < n; ++t) {
    acc += w[t] * x[t] * taper.root(k);
    k += step;
    if (k >= n) k -= n;
  }
  return acc / std::sqrt(taper.normalizer());
}

}  // namespace

SeriesMatrix difference(const SeriesMatrix& series, int order) {
  if (order < 0) throw config_error("difference", "order must be >= 0");
  if (static_cast<std::size_t>(order) >= series.n())
    throw config_error("difference",
                       "differencing order " + std::to_string(order) +
                           " not below series length " + std::to_string(series.n()));
  SeriesMatrix out = series;
  for (int pass = 0; pass < order; ++pass) {
    SeriesMatrix next(out.n() - 1, out.q());
    for (std::size_t c = 0; c < out.q(); ++c) {
      auto src = out.column(c);
      auto dst = next.column(c);
      for (std::size_t t = 0; t + 1 < out.n(); ++t) dst[t] = src[t + 1] - src[t];
    }
    out = std::move(next);
  }
  return out;
}

std::vector<std::complex<double>> tapered_dft(const SeriesMatrix& series,
                                              const TaperSpec& taper, long j) {
  if (series.n() != taper.n())
    throw config_error("spectral", "taper built for a different series length");
  check_frequency(taper, j);
  std::vector<std::complex<double>> out(series.q());
  for (std::size_t c = 0; c < series.q(); ++c)
    out[c] = dft_column(series.column(c), taper, j);
  return out;
}

double univariate_tapered_periodogram(std::span<const double> series,
                                      const TaperSpec& taper, long j) {
  if (series.size() != taper.n())
    throw config_error("spectral", "taper built for a different series length");
  check_frequency(taper, j);
  return std::norm(dft_column(series, taper, j));
}

std::vector<double> univariate_ordinates_serial(std::span<const double> series,
                                                const TaperSpec& taper, long j0,
                                                std::size_t count) {
  if (series.size() != taper.n())
    throw config_error("spectral", "taper built for a different series length");
  check_frequency(taper, j0);
  if (count > 0) check_frequency(taper, j0 + static_cast<long>(count) - 1);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = std::norm(dft_column(series, taper, j0 + static_cast<long>(i)));
  return out;
}

std::vector<double> univariate_ordinates(std::span<const double> series,
                                         const TaperSpec& taper, long j0,
                                         std::size_t count) {
  if (series.size() != taper.n())
    throw config_error("spectral", "taper built for a different series length");
  check_frequency(taper, j0);
  if (count > 0) check_frequency(taper, j0 + static_cast<long>(count) - 1);
  std::vector<double> out(count);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < count; ++i)
    out[i] = std::norm(dft_column(series, taper, j0 + static_cast<long>(i)));
  return out;
}

AveragedPeriodogram averaged_periodogram(const SeriesMatrix& series,
                                         const TaperSpec& taper, std::size_t m,
                                         bool allow_small_m) {
  const std::size_t q = series.q();
  if (m <= q + 3 && !allow_small_m)
    throw config_error("spectral",
                       "averaging bandwidth m = " + std::to_string(m) +
                           " must exceed q + 3 = " + std::to_string(q + 3) +
                           " (set the small-m override to proceed anyway)");
  if (m < 1) throw config_error("spectral", "m must be >= 1");
  if (static_cast<long>(m) > taper.max_frequency())
    throw config_error("spectral", "m exceeds the admissible frequency range");

  AveragedPeriodogram out;
  out.m = m;
  out.matrix = Matrix(q, q, 0.0);
  out.per_frequency.reserve(m);
  for (std::size_t j = 1; j <= m; ++j) {
    auto jv = tapered_dft(series, taper, static_cast<long>(j));
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = a; b < q; ++b) {
        const double re = (jv[a] * std::conj(jv[b])).real();
        out.matrix(a, b) += re;
        if (b != a) out.matrix(b, a) += re;
      }
    out.per_frequency.push_back(std::move(jv));
  }
  return out;
}

}  // namespace fracoint
