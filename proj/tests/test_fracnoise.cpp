#include <doctest.h>

#include <cmath>
#include <vector>

#include "fracoint/errors.hpp"
#include "fracoint/fracnoise.hpp"
#include "fracoint/rng.hpp"

using namespace fracoint;

namespace {

// Biased sample autocorrelation at lag k.
double sample_acf(const std::vector<double>& x, std::size_t lag) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    den += (x[t] - mean) * (x[t] - mean);
    if (t + lag < x.size()) num += (x[t] - mean) * (x[t + lag] - mean);
  }
  return num / den;
}

// Exact lag autocorrelations of the long-memory filter output, via the Gamma
// recursion rho_{k+1}/rho_k = (k + d)/(k + 1 - d). Independent of the MA
// recursion the generator uses.
double exact_rho(double d, std::size_t lag) {
  double rho = 1.0;
  for (std::size_t k = 0; k < lag; ++k)
    rho *= (static_cast<double>(k) + d) / (static_cast<double>(k) + 1.0 - d);
  return rho;
}

}  // namespace

TEST_CASE("MA coefficient recursion") {
  const auto psi = frac_ma_coeffs(64, 0.3);
  CHECK(psi[0] == 1.0);
  CHECK(psi[1] == doctest::Approx(0.3));  // psi_1 = d
  // Closed form psi_j = Gamma(j + d) / (Gamma(d) Gamma(j + 1)).
  const double d = 0.35;
  const auto psi2 = frac_ma_coeffs(64, d);
  for (std::size_t j : {2ul, 5ul, 50ul}) {
    const double closed = std::exp(std::lgamma(j + d) - std::lgamma(d) -
                                   std::lgamma(static_cast<double>(j) + 1.0));
    CHECK(psi2[j] == doctest::Approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("d = 0 is the identity filter") {
  const std::uint64_t seed = 99;
  const auto out = frac_noise(100, 0.0, seed, 0);
  GaussianStream g(seed);
  for (std::size_t t = 0; t < 100; ++t) CHECK(out[t] == g.next());
}

TEST_CASE("filter kernels agree") {
  for (std::size_t len : {257ul, 1500ul, 5000ul}) {
    GaussianStream g(len);
    std::vector<double> eps(len);
    for (auto& e : eps) e = g.next();
    const auto psi = frac_ma_coeffs(len, 0.45);
    std::vector<double> a(len), b(len), c(len);
    ma_filter_serial(psi, eps, a);
    ma_filter_omp(psi, eps, b);
    ma_filter_fft(psi, eps, c);
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    for (std::size_t t = 0; t < len; ++t) {
      CHECK(std::abs(a[t] - b[t]) <= 1e-12 * scale);
      CHECK(std::abs(a[t] - c[t]) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("lag-1 autocorrelation matches d/(1-d)") {
  const double d = 0.4;
  const std::size_t n = 1 << 16;
  double acc = 0.0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    const auto x = frac_noise(n, d, derive_seed(2024, s), 10 * n);
    acc += sample_acf(x, 1);
  }
  acc /= seeds;
  CHECK(std::abs(acc - d / (1.0 - d)) < 0.03);
}

TEST_CASE("deep negative memory via integer differencing") {
  // d = -0.6 is generated as the first difference of a d = 0.4 series; its
  // exact lag-1 autocorrelation follows from the parent's autocovariances.
  const double d_parent = 0.4;
  const double rho1 = exact_rho(d_parent, 1);
  const double rho2 = exact_rho(d_parent, 2);
  const double want = (2.0 * rho1 - 1.0 - rho2) / (2.0 - 2.0 * rho1);
  CHECK(want == doctest::Approx(-0.375));  // hand value for d = 0.4

  const std::size_t n = 1 << 14;
  double acc = 0.0;
  const int seeds = 10;
  for (int s = 0; s < seeds; ++s) {
    const auto x = frac_noise(n, -0.6, derive_seed(77, s), 10 * n);
    REQUIRE(x.size() == n);
    acc += sample_acf(x, 1);
  }
  acc /= seeds;
  CHECK(std::abs(acc - want) < 0.03);
}

TEST_CASE("rejections") {
  CHECK_THROWS_AS(frac_noise(100, 0.5, 1, 0), config_error);
  CHECK_THROWS_AS(frac_noise(100, 0.75, 1, 0), config_error);
  CHECK_THROWS_AS(frac_noise(100, -0.5, 1, 0), config_error);  // lands on 1/2
  CHECK_THROWS_AS(frac_noise(0, 0.2, 1, 0), config_error);
  CHECK(integer_shift_for_memory(-0.6) == 1);
  CHECK(integer_shift_for_memory(-1.3) == 2);
  CHECK(integer_shift_for_memory(0.49) == 0);
}

TEST_CASE("determinism in the full spec") {
  const auto a = frac_noise(512, 0.25, 5, 1000);
  const auto b = frac_noise(512, 0.25, 5, 1000);
  const auto c = frac_noise(512, 0.25, 6, 1000);
  CHECK(a == b);
  CHECK(a != c);
}
