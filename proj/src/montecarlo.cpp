#include "fracoint/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "fracoint/eigensolve.hpp"
#include "fracoint/errors.hpp"
#include "fracoint/rng.hpp"
#include "fracoint/spectral.hpp"

namespace fracoint {

namespace {

using ordered_json = nlohmann::ordered_json;

struct RepOutcome {
  bool ok = false;
  std::string error;
  std::vector<double> eigenvalues;
  std::vector<double> sin_theta;
  std::vector<double> d_hat;                  // at the default bandwidth
  std::vector<std::vector<double>> d_hat_by_mn;  // [mn index][column]
  bool recovered = false;
  bool reject = false;
};

std::size_t mn_from_exponent(std::size_t n_stat, double expo) {
  return static_cast<std::size_t>(
      std::floor(std::pow(static_cast<double>(n_stat), expo) + 1e-9));
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// Least-squares slope of y against x.
double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= static_cast<double>(n);
  ym /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (x[i] - xm) * (y[i] - ym);
    den += (x[i] - xm) * (x[i] - xm);
  }
  return num / den;
}

RepOutcome run_one(const McSpec& mc, std::size_t n, std::uint64_t seed) {
  SimSpec sim = mc.sim;
  sim.n = n;
  sim.seed = seed;
  SimulationOutput out = simulate_model(sim);

  const SeriesMatrix stat =
      sim.emit_levels ? difference(out.series, sim.p - 1) : std::move(out.series);
  const std::size_t q = stat.q();
  const TaperSpec taper(stat.n(), sim.p);

  const std::size_t m = mc.m == 0 ? q + 4 : mc.m;
  const std::size_t mn_default = mc.mn_override
                                     ? mc.mn_override
                                     : mn_from_exponent(stat.n(), mc.mn_exponent);
  std::vector<std::size_t> bias_mns;
  for (double e : mc.bias_mn_exponents) bias_mns.push_back(mn_from_exponent(stat.n(), e));
  std::size_t mn_max = mn_default;
  for (std::size_t v : bias_mns) mn_max = std::max(mn_max, v);

  GseConfig gcfg;
  gcfg.p = sim.p;
  const auto [d1_def, d2_def] = GseConfig::default_interval(sim.p);
  gcfg.delta1 = mc.delta1 == AnalysisConfig::kAuto ? d1_def : mc.delta1;
  gcfg.delta2 = mc.delta2 == AnalysisConfig::kAuto ? d2_def : mc.delta2;
  gcfg.omit_low = mc.omit_low;
  gcfg.m = m;
  gcfg.m_n = mn_max;
  gcfg.validate(stat.n(), "montecarlo");
  const long j0 = gcfg.first_frequency();

  RepOutcome rep;

  const auto estimate_column = [&](std::span<const double> col) {
    const std::vector<double> i_vv = univariate_ordinates(col, taper, j0, mn_max);
    const auto at_mn = [&](std::size_t mn) {
      std::vector<std::pair<long, double>> ords(mn);
      for (std::size_t i = 0; i < mn; ++i)
        ords[i] = {j0 + static_cast<long>(i), i_vv[i]};
      GseConfig local = gcfg;
      local.m_n = mn;
      return gse_estimate_from_ordinates(ords, stat.n(), local);
    };
    std::vector<double> by_mn;
    by_mn.reserve(bias_mns.size());
    for (std::size_t mn : bias_mns) by_mn.push_back(at_mn(mn).d_hat);
    return std::make_pair(at_mn(mn_default).d_hat, by_mn);
  };

  if (q == 1) {
    auto [dhat, by_mn] = estimate_column(stat.column(0));
    rep.d_hat = {dhat};
    rep.d_hat_by_mn.resize(bias_mns.size());
    for (std::size_t i = 0; i < bias_mns.size(); ++i)
      rep.d_hat_by_mn[i] = {by_mn[i]};
    rep.ok = true;
    return rep;
  }

  const AveragedPeriodogram ap = averaged_periodogram(stat, taper, m);
  const EigenDecomposition eig = eig_sym_desc(ap.matrix);
  rep.eigenvalues = eig.eigenvalues;

  const std::vector<Matrix> groups = group_eigenvectors(eig, sim.partition);
  rep.sin_theta.resize(groups.size());
  for (std::size_t k = 0; k < groups.size(); ++k)
    rep.sin_theta[k] = subspace_sin_theta(groups[k], out.truth.bases[k]);

  const SeriesMatrix residuals = residual_series(stat, eig.eigenvectors);
  rep.d_hat.resize(q);
  rep.d_hat_by_mn.assign(bias_mns.size(), std::vector<double>(q));
  for (std::size_t c = 0; c < q; ++c) {
    auto [dhat, by_mn] = estimate_column(residuals.column(c));
    rep.d_hat[c] = dhat;
    for (std::size_t i = 0; i < bias_mns.size(); ++i) rep.d_hat_by_mn[i][c] = by_mn[i];
  }

  rep.recovered =
      identify_partition(rep.d_hat, mn_default, mc.rule) == sim.partition;
  rep.reject = cointegration_test(rep.d_hat.front(), rep.d_hat.back(), mn_default,
                                  sim.p, mc.alpha)
                   .reject;
  rep.ok = true;
  return rep;
}

}  // namespace

void McSpec::validate() const {
  const char* stage = "montecarlo";
  if (replications < 1) throw config_error(stage, "replications must be >= 1");
  if (n_grid.empty()) throw config_error(stage, "n_grid must not be empty");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1])
      throw config_error(stage, "n_grid must be strictly increasing");
  rule.validate(stage);
  if (!(alpha > 0.0 && alpha < 1.0))
    throw config_error(stage, "alpha must lie in (0, 1)");
}

McSummary run_monte_carlo(const McSpec& spec) {
  spec.validate();
  {
    SimSpec probe = spec.sim;  // fail fast on template errors
    probe.n = spec.n_grid.front();
    probe.validate();
  }

  McSummary summary;
  summary.replications = spec.replications;
  summary.master_seed = spec.master_seed;
  summary.alpha = spec.alpha;
  summary.metrics = spec.metrics;

  const long reps = static_cast<long>(spec.replications);
  for (std::size_t n : spec.n_grid) {
    std::vector<RepOutcome> results(spec.replications);
    const std::uint64_t n_seed = derive_seed(spec.master_seed, n);
#ifdef _OPENMP
    const int workers = spec.workers > 0 ? spec.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
#endif
    for (long rep = 0; rep < reps; ++rep) {
      try {
        results[rep] = run_one(spec, n, derive_seed(n_seed, rep));
      } catch (const std::exception& ex) {
        results[rep].ok = false;
        results[rep].error = ex.what();
      }
    }

    McCell cell;
    cell.n = n;
    cell.n_stat = spec.sim.emit_levels ? n - (spec.sim.p - 1) : n;
    cell.m_n = spec.mn_override ? spec.mn_override
                                : mn_from_exponent(cell.n_stat, spec.mn_exponent);
    cell.replications = spec.replications;
    for (std::size_t k = 0; k < results.size(); ++k)
      if (!results[k].ok)
        cell.failures.push_back("rep " + std::to_string(k) + ": " + results[k].error);
    cell.successes = spec.replications - cell.failures.size();
    if (cell.successes == 0) {
      summary.cells.push_back(std::move(cell));
      continue;
    }

    const std::size_t q = spec.sim.q;
    cell.true_d.resize(q);
    for (std::size_t c = 0; c < q; ++c)
      cell.true_d[c] = spec.sim.d[spec.sim.partition.group_of(c)];

    cell.d_mean.assign(q, 0.0);
    cell.scaled_error_variance.assign(q, 0.0);
    cell.variance_ratio.assign(q, 0.0);
    for (std::size_t c = 0; c < q; ++c) {
      std::vector<double> errs;
      errs.reserve(cell.successes);
      double mean = 0.0;
      for (const auto& r : results)
        if (r.ok) {
          mean += r.d_hat[c];
          errs.push_back(std::sqrt(static_cast<double>(cell.m_n)) *
                         (r.d_hat[c] - cell.true_d[c]));
        }
      mean /= static_cast<double>(cell.successes);
      cell.d_mean[c] = mean;
      double em = 0.0;
      for (double e : errs) em += e;
      em /= static_cast<double>(errs.size());
      double var = 0.0;
      for (double e : errs) var += (e - em) * (e - em);
      var = errs.size() > 1 ? var / static_cast<double>(errs.size() - 1) : 0.0;
      cell.scaled_error_variance[c] = var;
      cell.variance_ratio[c] = var / (phi_p(spec.sim.p) / 4.0);
    }

    if (q > 1) {
      const std::size_t groups = spec.sim.partition.sizes.size();
      cell.sin_theta_median.resize(groups);
      for (std::size_t k = 0; k < groups; ++k) {
        std::vector<double> v;
        for (const auto& r : results)
          if (r.ok) v.push_back(r.sin_theta[k]);
        cell.sin_theta_median[k] = median_of(std::move(v));
      }
      cell.log_eigenvalue_median.resize(q);
      for (std::size_t j = 0; j < q; ++j) {
        std::vector<double> v;
        for (const auto& r : results)
          if (r.ok) v.push_back(std::log(r.eigenvalues[j]));
        cell.log_eigenvalue_median[j] = median_of(std::move(v));
      }
      std::size_t rejected = 0, recovered = 0;
      for (const auto& r : results)
        if (r.ok) {
          rejected += r.reject ? 1 : 0;
          recovered += r.recovered ? 1 : 0;
        }
      const double ns = static_cast<double>(cell.successes);
      cell.rejection_rate = static_cast<double>(rejected) / ns;
      cell.rejection_se =
          std::sqrt(cell.rejection_rate * (1.0 - cell.rejection_rate) / ns);
      cell.recovery_rate = static_cast<double>(recovered) / ns;
      cell.recovery_se =
          std::sqrt(cell.recovery_rate * (1.0 - cell.recovery_rate) / ns);
    }

    if (!spec.bias_mn_exponents.empty()) {
      for (double e : spec.bias_mn_exponents)
        cell.bias_m_ns.push_back(mn_from_exponent(cell.n_stat, e));
      cell.bias_by_mn.assign(cell.bias_m_ns.size(), std::vector<double>(q, 0.0));
      for (std::size_t i = 0; i < cell.bias_m_ns.size(); ++i)
        for (std::size_t c = 0; c < q; ++c) {
          double mean = 0.0;
          for (const auto& r : results)
            if (r.ok) mean += r.d_hat_by_mn[i][c];
          cell.bias_by_mn[i][c] =
              mean / static_cast<double>(cell.successes) - cell.true_d[c];
        }
    }
    summary.cells.push_back(std::move(cell));
  }

  // Log-log slopes across the n grid.
  if (summary.cells.size() >= 2 && spec.sim.q > 1) {
    std::vector<double> logn;
    for (const auto& c : summary.cells) logn.push_back(std::log(static_cast<double>(c.n_stat)));
    const std::size_t groups = spec.sim.partition.sizes.size();
    summary.sin_theta_slope.resize(groups);
    for (std::size_t k = 0; k < groups; ++k) {
      std::vector<double> y;
      for (const auto& c : summary.cells)
        y.push_back(std::log(c.sin_theta_median[k]));
      summary.sin_theta_slope[k] = slope_of(logn, y);
    }
    summary.eigenvalue_slope.resize(spec.sim.q);
    for (std::size_t j = 0; j < spec.sim.q; ++j) {
      std::vector<double> y;
      for (const auto& c : summary.cells) y.push_back(c.log_eigenvalue_median[j]);
      summary.eigenvalue_slope[j] = slope_of(logn, y);
    }
  }
  return summary;
}

std::string summary_to_json(const McSummary& s) {
  ordered_json doc;
  doc["replications"] = s.replications;
  doc["master_seed"] = s.master_seed;
  doc["alpha"] = round_sig12(s.alpha);
  ordered_json cells = ordered_json::array();
  for (const auto& c : s.cells) {
    ordered_json one;
    one["n"] = c.n;
    one["n_stat"] = c.n_stat;
    one["m_n"] = c.m_n;
    one["replications"] = c.replications;
    one["successes"] = c.successes;
    if (!c.failures.empty()) one["failures"] = c.failures;
    if (c.successes == 0) {
      cells.push_back(one);
      continue;
    }
    auto arr = [](const std::vector<double>& v) {
      ordered_json a = ordered_json::array();
      for (double x : v) a.push_back(round_sig12(x));
      return a;
    };
    if (s.metrics.gse_law) {
      one["true_d"] = arr(c.true_d);
      one["d_mean"] = arr(c.d_mean);
      one["scaled_error_variance"] = arr(c.scaled_error_variance);
      one["variance_ratio"] = arr(c.variance_ratio);
    }
    if (s.metrics.sin_theta && !c.sin_theta_median.empty())
      one["sin_theta_median"] = arr(c.sin_theta_median);
    if (s.metrics.eigenvalues && !c.log_eigenvalue_median.empty())
      one["log_eigenvalue_median"] = arr(c.log_eigenvalue_median);
    if (s.metrics.rejection && !c.sin_theta_median.empty()) {
      one["rejection_rate"] = round_sig12(c.rejection_rate);
      one["rejection_se"] = round_sig12(c.rejection_se);
    }
    if (s.metrics.partition_recovery && !c.sin_theta_median.empty()) {
      one["recovery_rate"] = round_sig12(c.recovery_rate);
      one["recovery_se"] = round_sig12(c.recovery_se);
    }
    if (s.metrics.bias_table && !c.bias_m_ns.empty()) {
      one["bias_m_ns"] = c.bias_m_ns;
      ordered_json biases = ordered_json::array();
      for (const auto& row : c.bias_by_mn) biases.push_back(arr(row));
      one["bias_by_mn"] = biases;
    }
    cells.push_back(one);
  }
  doc["cells"] = cells;
  if (!s.sin_theta_slope.empty()) {
    ordered_json a = ordered_json::array();
    for (double x : s.sin_theta_slope) a.push_back(round_sig12(x));
    doc["sin_theta_slope"] = a;
  }
  if (!s.eigenvalue_slope.empty()) {
    ordered_json a = ordered_json::array();
    for (double x : s.eigenvalue_slope) a.push_back(round_sig12(x));
    doc["eigenvalue_slope"] = a;
  }
  return doc.dump(2) + "\n";
}

McSpec mc_spec_from_kv(const KvConfig& kv) {
  McSpec mc;
  mc.sim = sim_spec_from_kv(kv);
  if (kv.has("n_grid"))
    mc.n_grid = kv.get_size_list("n_grid");
  else if (mc.sim.n > 0)
    mc.n_grid = {mc.sim.n};
  mc.replications = static_cast<std::size_t>(kv.get_long("reps", 1));
  mc.master_seed = kv.get_u64("master_seed", kv.get_u64("seed", 0));
  mc.workers = static_cast<int>(kv.get_long("workers", 0));
  mc.m = static_cast<std::size_t>(kv.get_long("m", 0));
  mc.mn_exponent = kv.get_double("mn_exponent", 0.6);
  mc.mn_override = static_cast<std::size_t>(kv.get_long("mn_override", 0));
  if (kv.has("bias_mn_exponents"))
    mc.bias_mn_exponents = kv.get_double_list("bias_mn_exponents");
  mc.delta1 = kv.get_double("delta1", AnalysisConfig::kAuto);
  mc.delta2 = kv.get_double("delta2", AnalysisConfig::kAuto);
  mc.omit_low = kv.get_bool("omit_low", true);
  mc.alpha = kv.get_double("alpha", 0.05);
  mc.rule.C = kv.get_double("C", 2.0);
  mc.rule.epsilon = kv.get_double("epsilon", 0.1);
  mc.metrics.bias_table = !mc.bias_mn_exponents.empty();
  return mc;
}

}  // namespace fracoint
