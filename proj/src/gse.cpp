#include "fracoint/gse.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "fracoint/errors.hpp"
#include "fracoint/spectral.hpp"

namespace fracoint {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kGoldenTol = 1e-7;
constexpr int kGridPoints = 129;

// Golden-section refinement on [lo, hi] containing a minimum.
double golden_section(const std::function<double(double)>& f, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > kGoldenTol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double phi_p(int p) {
  if (p < 1) throw config_error("gse", "taper order p must be >= 1");
  const double pd = p;
  return std::exp(std::lgamma(4.0 * pd - 3.0) + 4.0 * std::lgamma(pd) -
                  4.0 * std::lgamma(2.0 * pd - 1.0));
}

std::pair<double, double> GseConfig::default_interval(int p) {
  return {-static_cast<double>(p) + 0.51, 0.49};
}

void GseConfig::validate(std::size_t n, const char* stage) const {
  if (p < 1) throw config_error(stage, "taper order p must be >= 1");
  if (m_n < 2) throw config_error(stage, "GSE bandwidth m_n must be >= 2");
  const double lo = -static_cast<double>(p) + 0.5;
  if (!(lo < delta1 && delta1 < delta2 && delta2 < 0.5))
    throw config_error(stage,
                       "optimization interval must satisfy -p + 1/2 < delta1 < "
                       "delta2 < 1/2");
  const long last = first_frequency() + static_cast<long>(m_n) - 1;
  if (last > static_cast<long>(n) - p)
    throw config_error(stage, "frequency band [" +
                                  std::to_string(first_frequency()) + ", " +
                                  std::to_string(last) + "] exceeds n - p = " +
                                  std::to_string(static_cast<long>(n) - p));
}

double gse_objective(const std::vector<std::pair<long, double>>& ordinates,
                     double d, std::size_t n, int p) {
  if (ordinates.size() < 2)
    throw config_error("gse", "objective needs at least 2 ordinates");
  const double shift = 0.5 * (static_cast<double>(p) - 1.0);
  double lbar = 0.0;
  bool any_positive = false;
  for (const auto& [j, ivv] : ordinates) {
    if (ivv < 0.0)
      throw numeric_error("gse", "negative periodogram ordinate");
    if (ivv > 0.0) any_positive = true;
    lbar += std::log(2.0 * kPi * (static_cast<double>(j) + shift) /
                     static_cast<double>(n));
  }
  if (!any_positive) throw degenerate_residual_error("gse");
  lbar /= static_cast<double>(ordinates.size());

  double acc = 0.0;
  for (const auto& [j, ivv] : ordinates) {
    const double lj = std::log(2.0 * kPi * (static_cast<double>(j) + shift) /
                               static_cast<double>(n));
    acc += ivv * std::exp(2.0 * d * (lj - lbar));
  }
  return std::log(acc / static_cast<double>(ordinates.size()));
}

MemoryEstimate gse_estimate_from_ordinates(
    const std::vector<std::pair<long, double>>& ordinates, std::size_t n,
    const GseConfig& config) {
  config.validate(n, "gse");
  if (ordinates.size() != config.m_n)
    throw config_error("gse", "ordinate count does not match the bandwidth");

  const auto objective = [&](double d) {
    return gse_objective(ordinates, d, n, config.p);
  };

  // Coarse grid guards against boundary-adjacent local minima on short series.
  double best_d = config.delta1;
  double best_r = objective(best_d);
  const double step = (config.delta2 - config.delta1) / (kGridPoints - 1);
  for (int i = 1; i < kGridPoints; ++i) {
    const double d = config.delta1 + step * i;
    const double r = objective(d);
    if (r < best_r) {
      best_r = r;
      best_d = d;
    }
  }
  const double lo = std::max(config.delta1, best_d - step);
  const double hi = std::min(config.delta2, best_d + step);
  double d_hat = golden_section(objective, lo, hi);
  d_hat = std::clamp(d_hat, config.delta1, config.delta2);

  MemoryEstimate est;
  est.d_hat = d_hat;
  est.m_n = config.m_n;
  est.se = std::sqrt(phi_p(config.p) / (4.0 * static_cast<double>(config.m_n)));
  est.objective_min = objective(d_hat);
  est.band_first = ordinates.front().first;
  est.band_last = ordinates.back().first;
  constexpr double kBoundaryTol = 1e-6;
  if (d_hat - config.delta1 < kBoundaryTol) {
    est.converged = false;
    est.flag = "boundary_lower";
  } else if (config.delta2 - d_hat < kBoundaryTol) {
    est.converged = false;
    est.flag = "boundary_upper";
  } else {
    est.converged = true;
  }
  return est;
}

MemoryEstimate gse_estimate(std::span<const double> residual,
                            const GseConfig& config, const TaperSpec& taper) {
  if (residual.size() != taper.n())
    throw config_error("gse", "taper built for a different series length");
  config.validate(taper.n(), "gse");
  const long j0 = config.first_frequency();
  const std::vector<double> i_vv =
      univariate_ordinates(residual, taper, j0, config.m_n);
  std::vector<std::pair<long, double>> ordinates(config.m_n);
  for (std::size_t i = 0; i < config.m_n; ++i)
    ordinates[i] = {j0 + static_cast<long>(i), i_vv[i]};
  return gse_estimate_from_ordinates(ordinates, taper.n(), config);
}

}  // namespace fracoint
