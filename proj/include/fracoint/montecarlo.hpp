#ifndef FRACOINT_MONTECARLO_HPP
#define FRACOINT_MONTECARLO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fracoint/analysis.hpp"
#include "fracoint/model_sim.hpp"

namespace fracoint {

struct McMetrics {
  bool gse_law = true;             // mean(d_hat), var of sqrt(m_n)(d_hat - d)
  bool sin_theta = true;           // subspace angle quantiles per group
  bool eigenvalues = true;         // median log eigenvalues and slopes
  bool rejection = true;           // no-cointegration test rejection rate
  bool partition_recovery = true;  // identified partition == truth
  bool bias_table = false;         // mean bias across a bandwidth grid
};

struct McSpec {
  SimSpec sim;                     // template; n and seed set per replication
  std::vector<std::size_t> n_grid;
  std::size_t replications = 1;
  std::uint64_t master_seed = 0;
  int workers = 0;                 // 0 -> all available

  std::size_t m = 0;               // 0 -> q + 4
  double mn_exponent = 0.6;        // m_n = floor(n_stat^mn_exponent)
  std::size_t mn_override = 0;     // nonzero overrides the rule
  std::vector<double> bias_mn_exponents;  // bandwidth grid for the bias table
  double delta1 = AnalysisConfig::kAuto, delta2 = AnalysisConfig::kAuto;
  bool omit_low = true;
  double alpha = 0.05;
  IdentificationRule rule;
  McMetrics metrics;

  void validate() const;
};

// Per-n aggregates; vectors indexed per column / per group / per eigenvalue.
struct McCell {
  std::size_t n = 0, n_stat = 0, m_n = 0;
  std::size_t replications = 0, successes = 0;
  std::vector<std::string> failures;        // "rep <k>: <message>"

  std::vector<double> true_d;               // per column
  std::vector<double> d_mean;               // per column
  std::vector<double> scaled_error_variance;  // var of sqrt(m_n)(d_hat - d)
  std::vector<double> variance_ratio;       // over phi_p / 4

  std::vector<double> sin_theta_median;     // per group
  std::vector<double> log_eigenvalue_median;  // per eigenvalue index

  double rejection_rate = 0.0, rejection_se = 0.0;
  double recovery_rate = 0.0, recovery_se = 0.0;

  std::vector<std::size_t> bias_m_ns;
  std::vector<std::vector<double>> bias_by_mn;  // [mn index][column] mean bias
};

struct McSummary {
  std::size_t replications = 0;
  std::uint64_t master_seed = 0;
  double alpha = 0.0;
  std::vector<McCell> cells;                 // one per n, grid order
  std::vector<double> sin_theta_slope;       // per group, log-log in n
  std::vector<double> eigenvalue_slope;      // per eigenvalue index
  McMetrics metrics;
};

// Replication k draws seed derive_seed(derive_seed(master_seed, n), k); every
// replication is a pure function of that seed, results are stored by index
// and aggregated in index order, so the summary does not depend on the
// worker count or scheduling.
McSummary run_monte_carlo(const McSpec& spec);

std::string summary_to_json(const McSummary& summary);

McSpec mc_spec_from_kv(const KvConfig& kv);

}  // namespace fracoint

#endif
