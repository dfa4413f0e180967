// Compares the serial reference kernels against their OpenMP and FFT
// counterparts: the MA(inf) filter behind the simulator and the per-frequency
// tapered DFT batch behind the estimators.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fracoint/fracnoise.hpp"
#include "fracoint/rng.hpp"
#include "fracoint/spectral.hpp"
#include "fracoint/taper.hpp"

using namespace fracoint;

namespace {

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e100;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

volatile double sink = 0.0;

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  std::printf("\nMA filter, psi and eps of equal length L (best of 3):\n");
  std::printf("%10s %12s %12s %12s %10s %10s\n", "L", "serial[s]", "omp[s]",
              "fft[s]", "omp x", "fft x");
  for (std::size_t len : {4096ul, 16384ul, 65536ul}) {
    GaussianStream g(7);
    std::vector<double> eps(len), out(len);
    for (auto& e : eps) e = g.next();
    const std::vector<double> psi = frac_ma_coeffs(len, 0.4);
    const double ts = time_best_of(3, [&] {
      ma_filter_serial(psi, eps, out);
      sink += out[len - 1];
    });
    const double tp = time_best_of(3, [&] {
      ma_filter_omp(psi, eps, out);
      sink += out[len - 1];
    });
    const double tf = time_best_of(3, [&] {
      ma_filter_fft(psi, eps, out);
      sink += out[len - 1];
    });
    std::printf("%10zu %12.4f %12.4f %12.4f %9.1fx %9.1fx\n", len, ts, tp, tf,
                ts / tp, ts / tf);
  }

  std::printf("\ntapered periodogram ordinates, n=16384, p=2 (best of 5):\n");
  std::printf("%10s %12s %12s %10s\n", "count", "serial[s]", "omp[s]", "omp x");
  {
    const std::size_t n = 16384;
    GaussianStream g(11);
    std::vector<double> x(n);
    for (auto& v : x) v = g.next();
    const TaperSpec taper(n, 2);
    for (std::size_t count : {128ul, 512ul, 2048ul}) {
      const double ts = time_best_of(5, [&] {
        auto v = univariate_ordinates_serial(x, taper, 1, count);
        sink += v[count - 1];
      });
      const double tp = time_best_of(5, [&] {
        auto v = univariate_ordinates(x, taper, 1, count);
        sink += v[count - 1];
      });
      std::printf("%10zu %12.4f %12.4f %9.1fx\n", count, ts, tp, ts / tp);
    }
  }
  return 0;
}
