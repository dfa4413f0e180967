#ifndef FRACOINT_ANALYSIS_HPP
#define FRACOINT_ANALYSIS_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "fracoint/gse.hpp"
#include "fracoint/inference.hpp"
#include "fracoint/matrix.hpp"
#include "fracoint/subspace.hpp"

namespace fracoint {

struct AnalysisConfig {
  enum class InputKind { stationary, levels };

  InputKind kind = InputKind::stationary;
  int p = 2;
  std::size_t m = 0;    // 0 -> q + 4 (smallest admissible)
  std::size_t m_n = 0;  // 0 -> floor(n_stat^0.6)
  double delta1 = kAuto, delta2 = kAuto;  // kAuto -> [-p + 0.51, 0.49]
  double alpha = 0.05;
  IdentificationRule rule;
  bool omit_low = true;
  bool allow_small_m = false;
  bool gse_only = false;
  std::vector<std::size_t> partition_override;  // empty -> identify from gaps

  static constexpr double kAuto = -1e300;
};

struct GapDiagnostic {
  std::size_t position = 0;  // boundary between columns position and position+1
  double gap = 0.0;
  double threshold = 0.0;
  bool boundary = false;
};

struct CointegrationReport {
  // resolved configuration
  std::size_t n_input = 0, n_stat = 0, q = 0;
  int p = 1;
  std::size_t m = 0, m_n = 0;
  double delta1 = 0.0, delta2 = 0.0, alpha = 0.0;
  double rule_c = 0.0, rule_epsilon = 0.0, rule_threshold = 0.0;
  bool omit_low = true;
  std::string input_label, input_kind;
  std::string bandwidth_note;
  bool gse_only = false;
  bool partition_overridden = false;

  // estimates
  std::vector<double> eigenvalues;
  Matrix eigenvectors;  // columns are the estimated (cointegrating) vectors
  std::vector<MemoryEstimate> memory;  // per eigenvector column
  SubspacePartition partition;
  TestResult test;

  // diagnostics
  std::vector<GapDiagnostic> gaps;
  std::vector<std::size_t> negative_gap_positions;
  std::vector<std::size_t> boundary_solution_columns;
  bool eigenvalue_condition_flag = false;   // lambda_q < 1e-12 lambda_1
  bool small_separation_warning = false;    // some boundary gap <= 0.5

  std::vector<std::vector<std::complex<double>>> per_frequency;
};

// The full pipeline: (p-1)-th differences when the input is in levels, taper,
// averaged periodogram, eigendecomposition, residuals, per-column memory
// estimation, partition identification and the no-cointegration test.
CointegrationReport run_analysis(const AnalysisConfig& config,
                                 const SeriesMatrix& data,
                                 const std::string& input_label = "");

// Deterministic JSON bytes: stable key order, floats at 12 significant digits.
std::string report_to_json(const CointegrationReport& report);

// path ending in ".json": single document; otherwise treated as a directory
// that receives report.json plus plot-ready CSV side files.
void write_report(const CointegrationReport& report, const std::string& out_path);

double round_sig12(double x);

}  // namespace fracoint

#endif
