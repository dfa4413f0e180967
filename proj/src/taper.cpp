#include "fracoint/taper.hpp"

#include <cmath>

#include "fracoint/errors.hpp"

namespace fracoint {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TaperSpec::TaperSpec(std::size_t n, int p) : n_(n), p_(p) {
  if (n < 2) throw config_error("taper", "series length must be at least 2");
  if (p < 1) throw config_error("taper", "taper order p must be >= 1");
  if (static_cast<std::size_t>(p) >= n)
    throw config_error("taper", "taper order p must be smaller than n");

  roots_.resize(n);
  roots_[0] = {1.0, 0.0};  // t = n reduces here; keeps h_n exactly zero
  for (std::size_t k = 1; k < n; ++k) {
    const double ang = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    roots_[k] = {std::cos(ang), std::sin(ang)};
  }

  weights_.resize(n);
  if (p == 1) {
    for (auto& w : weights_) w = {1.0, 0.0};
  } else {
    for (std::size_t t = 1; t <= n; ++t) {
      const std::complex<double> h = 0.5 * (1.0 - root(t));
      std::complex<double> w = h;
      for (int e = 2; e < p; ++e) w *= h;
      weights_[t - 1] = w;
    }
  }
  sum_sq_ = 0.0;
  for (const auto& w : weights_) sum_sq_ += std::norm(w);
  normalizer_ = 2.0 * kPi * sum_sq_;
  if (!(normalizer_ > 0.0))
    throw numeric_error("taper", "taper normalizer is not positive");
}

}  // namespace fracoint
