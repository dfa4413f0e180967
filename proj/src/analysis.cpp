#include "fracoint/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "fracoint/eigensolve.hpp"
#include "fracoint/errors.hpp"
#include "fracoint/spectral.hpp"

namespace fracoint {

namespace {

using ordered_json = nlohmann::ordered_json;

std::size_t default_mn(std::size_t n_stat) {
  return static_cast<std::size_t>(
      std::floor(std::pow(static_cast<double>(n_stat), 0.6) + 1e-9));
}

ordered_json json_number(double x) { return ordered_json(round_sig12(x)); }

}  // namespace

double round_sig12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

CointegrationReport run_analysis(const AnalysisConfig& config,
                                 const SeriesMatrix& data,
                                 const std::string& input_label) {
  data.validate("ingest");
  const std::size_t q = data.q();
  if (config.p < 1) throw config_error("analyze", "p must be >= 1");
  if (q == 1 && !config.gse_only)
    throw config_error("subspace",
                       "the subspace pipeline needs q >= 2 columns; a single "
                       "column supports only the memory estimate (--gse-only)");

  CointegrationReport rep;
  rep.q = q;
  rep.p = config.p;
  rep.n_input = data.n();
  rep.input_label = input_label;
  rep.input_kind =
      config.kind == AnalysisConfig::InputKind::levels ? "levels" : "stationary";
  rep.gse_only = config.gse_only;

  const SeriesMatrix stat = config.kind == AnalysisConfig::InputKind::levels
                                ? difference(data, config.p - 1)
                                : data;
  rep.n_stat = stat.n();
  const TaperSpec taper(stat.n(), config.p);

  rep.m = config.m == 0 ? q + 4 : config.m;
  rep.m_n = config.m_n == 0 ? default_mn(stat.n()) : config.m_n;
  rep.bandwidth_note =
      config.m_n == 0
          ? "m_n = floor(n_stat^0.6) default; grows slowly enough for the "
            "asymptotic variance under smoothness exponent 2"
          : "user bandwidth; default rule floor(n_stat^0.6) would give " +
                std::to_string(default_mn(stat.n()));

  GseConfig gcfg;
  gcfg.m_n = rep.m_n;
  gcfg.p = config.p;
  const auto [d1_def, d2_def] = GseConfig::default_interval(config.p);
  gcfg.delta1 = config.delta1 == AnalysisConfig::kAuto ? d1_def : config.delta1;
  gcfg.delta2 = config.delta2 == AnalysisConfig::kAuto ? d2_def : config.delta2;
  gcfg.omit_low = config.omit_low;
  gcfg.m = rep.m;
  gcfg.validate(stat.n(), "analyze");
  rep.delta1 = gcfg.delta1;
  rep.delta2 = gcfg.delta2;
  rep.omit_low = config.omit_low;
  rep.alpha = config.alpha;
  config.rule.validate("analyze");
  rep.rule_c = config.rule.C;
  rep.rule_epsilon = config.rule.epsilon;
  rep.rule_threshold = config.rule.threshold(rep.m_n);
  if (!(config.alpha > 0.0 && config.alpha < 1.0))
    throw config_error("analyze", "alpha must lie in (0, 1)");

  if (config.gse_only) {
    for (std::size_t c = 0; c < q; ++c)
      rep.memory.push_back(gse_estimate(stat.column(c), gcfg, taper));
    for (std::size_t c = 0; c < q; ++c)
      if (!rep.memory[c].converged) rep.boundary_solution_columns.push_back(c + 1);
    return rep;
  }

  const AveragedPeriodogram ap =
      averaged_periodogram(stat, taper, rep.m, config.allow_small_m);
  const EigenDecomposition eig = eig_sym_desc(ap.matrix);
  if (eig.eigenvalues.back() < -1e-10 * eig.source_trace)
    throw numeric_error("eigendecomposition",
                        "averaged periodogram is not positive semidefinite");
  rep.eigenvalues = eig.eigenvalues;
  rep.eigenvectors = eig.eigenvectors;
  rep.eigenvalue_condition_flag =
      eig.eigenvalues.back() < 1e-12 * eig.eigenvalues.front();
  rep.per_frequency = ap.per_frequency;

  const SeriesMatrix residuals = residual_series(stat, eig.eigenvectors);
  std::vector<double> d_hats(q);
  for (std::size_t c = 0; c < q; ++c) {
    rep.memory.push_back(gse_estimate(residuals.column(c), gcfg, taper));
    d_hats[c] = rep.memory[c].d_hat;
    if (!rep.memory[c].converged) rep.boundary_solution_columns.push_back(c + 1);
  }

  if (!config.partition_override.empty()) {
    rep.partition.sizes = config.partition_override;
    rep.partition.validate(q, "analyze");
    rep.partition_overridden = true;
  } else {
    rep.partition = identify_partition(d_hats, rep.m_n, config.rule);
  }

  rep.test = cointegration_test(d_hats.front(), d_hats.back(), rep.m_n, config.p,
                                config.alpha);

  for (std::size_t j = 0; j + 1 < q; ++j) {
    GapDiagnostic g;
    g.position = j + 1;
    g.gap = d_hats[j] - d_hats[j + 1];
    g.threshold = rep.rule_threshold;
    g.boundary = g.gap > g.threshold;
    rep.gaps.push_back(g);
    if (g.gap < 0.0) rep.negative_gap_positions.push_back(j + 1);
    if (g.boundary && g.gap <= 0.5) rep.small_separation_warning = true;
  }
  return rep;
}

std::string report_to_json(const CointegrationReport& rep) {
  ordered_json doc;
  ordered_json meta;
  meta["n_input"] = rep.n_input;
  meta["n_stat"] = rep.n_stat;
  meta["q"] = rep.q;
  meta["p"] = rep.p;
  meta["m"] = rep.m;
  meta["m_n"] = rep.m_n;
  meta["delta1"] = json_number(rep.delta1);
  meta["delta2"] = json_number(rep.delta2);
  meta["alpha"] = json_number(rep.alpha);
  meta["C"] = json_number(rep.rule_c);
  meta["epsilon"] = json_number(rep.rule_epsilon);
  meta["identification_threshold"] = json_number(rep.rule_threshold);
  meta["omit_low"] = rep.omit_low;
  meta["input"] = rep.input_label;
  meta["kind"] = rep.input_kind;
  meta["bandwidth_note"] = rep.bandwidth_note;
  meta["mode"] = rep.gse_only ? "gse_only" : "full";
  doc["meta"] = meta;

  if (!rep.gse_only) {
    ordered_json evals = ordered_json::array();
    for (double v : rep.eigenvalues) evals.push_back(json_number(v));
    doc["eigenvalues"] = evals;

    ordered_json evecs = ordered_json::array();
    for (std::size_t j = 0; j < rep.eigenvectors.cols(); ++j) {
      ordered_json col = ordered_json::array();
      for (std::size_t i = 0; i < rep.eigenvectors.rows(); ++i)
        col.push_back(json_number(rep.eigenvectors(i, j)));
      evecs.push_back(col);
    }
    doc["eigenvectors"] = evecs;
  }

  ordered_json mem = ordered_json::array();
  for (std::size_t c = 0; c < rep.memory.size(); ++c) {
    const MemoryEstimate& e = rep.memory[c];
    ordered_json one;
    one["column"] = c + 1;
    one["d_hat"] = json_number(e.d_hat);
    one["se"] = json_number(e.se);
    one["m_n"] = e.m_n;
    one["band"] = ordered_json::array({e.band_first, e.band_last});
    one["converged"] = e.converged;
    if (!e.flag.empty()) one["flag"] = e.flag;
    mem.push_back(one);
  }
  doc["memory"] = mem;

  if (!rep.gse_only) {
    ordered_json part;
    part["s"] = rep.partition.s();
    part["sizes"] = rep.partition.sizes;
    part["override"] = rep.partition_overridden;
    doc["partition"] = part;

    ordered_json test;
    test["T_n"] = json_number(rep.test.T_n);
    test["critical_value"] = json_number(rep.test.critical_value);
    test["alpha"] = json_number(rep.test.alpha);
    test["reject"] = rep.test.reject;
    test["conservative_p_upper"] = json_number(rep.test.conservative_p_upper);
    doc["test"] = test;

    ordered_json diag;
    ordered_json gaps = ordered_json::array();
    for (const auto& g : rep.gaps) {
      ordered_json one;
      one["position"] = g.position;
      one["gap"] = json_number(g.gap);
      one["threshold"] = json_number(g.threshold);
      one["boundary"] = g.boundary;
      gaps.push_back(one);
    }
    diag["gaps"] = gaps;
    diag["negative_gap_positions"] = rep.negative_gap_positions;
    diag["boundary_solution_columns"] = rep.boundary_solution_columns;
    diag["eigenvalue_condition_flag"] = rep.eigenvalue_condition_flag;
    diag["small_separation_warning"] = rep.small_separation_warning;
    doc["diagnostics"] = diag;
  } else {
    ordered_json diag;
    diag["boundary_solution_columns"] = rep.boundary_solution_columns;
    doc["diagnostics"] = diag;
  }
  return doc.dump(2) + "\n";
}

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("write", "cannot open '" + path.string() + "'");
  out << text;
  if (!out) throw data_error("write", "failed writing '" + path.string() + "'");
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", round_sig12(x));
  return buf;
}

}  // namespace

void write_report(const CointegrationReport& rep, const std::string& out_path) {
  namespace fs = std::filesystem;
  const std::string json = report_to_json(rep);
  if (out_path.size() > 5 && out_path.substr(out_path.size() - 5) == ".json") {
    write_text_file(out_path, json);
    return;
  }
  fs::create_directories(out_path);
  const fs::path dir(out_path);
  write_text_file(dir / "report.json", json);

  if (!rep.gse_only) {
    std::string ev = "index,eigenvalue\n";
    for (std::size_t j = 0; j < rep.eigenvalues.size(); ++j)
      ev += std::to_string(j + 1) + "," + csv_number(rep.eigenvalues[j]) + "\n";
    write_text_file(dir / "eigenvalues.csv", ev);

    std::string vx = "component";
    for (std::size_t j = 0; j < rep.eigenvectors.cols(); ++j)
      vx += ",vector_" + std::to_string(j + 1);
    vx += "\n";
    for (std::size_t i = 0; i < rep.eigenvectors.rows(); ++i) {
      vx += std::to_string(i + 1);
      for (std::size_t j = 0; j < rep.eigenvectors.cols(); ++j)
        vx += "," + csv_number(rep.eigenvectors(i, j));
      vx += "\n";
    }
    write_text_file(dir / "eigenvectors.csv", vx);

    std::string gp = "position,gap,threshold,boundary\n";
    for (const auto& g : rep.gaps)
      gp += std::to_string(g.position) + "," + csv_number(g.gap) + "," +
            csv_number(g.threshold) + "," + (g.boundary ? "1" : "0") + "\n";
    write_text_file(dir / "gaps.csv", gp);

    std::string pf = "j";
    for (std::size_t c = 0; c < rep.q; ++c)
      pf += ",re_" + std::to_string(c + 1) + ",im_" + std::to_string(c + 1);
    pf += "\n";
    for (std::size_t j = 0; j < rep.per_frequency.size(); ++j) {
      pf += std::to_string(j + 1);
      for (const auto& z : rep.per_frequency[j])
        pf += "," + csv_number(z.real()) + "," + csv_number(z.imag());
      pf += "\n";
    }
    write_text_file(dir / "per_frequency.csv", pf);
  }

  std::string mm = "column,d_hat,se,m_n,band_first,band_last,converged,flag\n";
  for (std::size_t c = 0; c < rep.memory.size(); ++c) {
    const auto& e = rep.memory[c];
    mm += std::to_string(c + 1) + "," + csv_number(e.d_hat) + "," +
          csv_number(e.se) + "," + std::to_string(e.m_n) + "," +
          std::to_string(e.band_first) + "," + std::to_string(e.band_last) + "," +
          (e.converged ? "1" : "0") + "," + e.flag + "\n";
  }
  write_text_file(dir / "memory.csv", mm);
}

}  // namespace fracoint
