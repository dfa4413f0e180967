#include "fracoint/inference.hpp"

#include <cmath>

#include "fracoint/errors.hpp"
#include "fracoint/gse.hpp"

namespace fracoint {

double normal_quantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0))
    throw config_error("inference", "normal quantile needs a probability in (0,1)");
  const double q = prob - 0.5;
  double r;
  if (std::abs(q) <= 0.425) {
    r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }
  r = (q < 0.0) ? prob : 1.0 - prob;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
              3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
            4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
            2.05319162663775882187e+0) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
            5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -val : val;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double IdentificationRule::threshold(std::size_t m_n) const {
  return C * std::pow(static_cast<double>(m_n), -0.5 + epsilon);
}

void IdentificationRule::validate(const char* stage) const {
  if (!(C > 0.0)) throw config_error(stage, "identification constant C must be > 0");
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw config_error(stage, "identification exponent must lie strictly in (0, 1/2)");
}

SubspacePartition identify_partition(const std::vector<double>& d_hats,
                                     std::size_t m_n,
                                     const IdentificationRule& rule) {
  rule.validate("identify");
  if (d_hats.empty()) throw config_error("identify", "no memory estimates given");
  if (m_n < 1) throw config_error("identify", "m_n must be >= 1");
  const double thr = rule.threshold(m_n);
  SubspacePartition part;
  std::size_t current = 1;
  for (std::size_t j = 0; j + 1 < d_hats.size(); ++j) {
    if (d_hats[j] - d_hats[j + 1] > thr) {
      part.sizes.push_back(current);
      current = 1;
    } else {
      ++current;
    }
  }
  part.sizes.push_back(current);
  return part;
}

TestResult cointegration_test(double d_hat_first, double d_hat_last,
                              std::size_t m_n, int p, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw config_error("test", "alpha must lie in (0, 1)");
  if (m_n < 1) throw config_error("test", "m_n must be >= 1");
  TestResult res;
  res.alpha = alpha;
  res.T_n = std::sqrt(static_cast<double>(m_n)) * (d_hat_first - d_hat_last);
  const double half_phi = std::sqrt(phi_p(p) / 2.0);
  res.critical_value = half_phi * normal_quantile(1.0 - alpha / 2.0);
  res.reject = res.T_n > res.critical_value;
  res.conservative_p_upper = 1.0 - normal_cdf(res.T_n / half_phi);
  return res;
}

}  // namespace fracoint
