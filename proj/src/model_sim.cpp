#include "fracoint/model_sim.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "fracoint/eigensolve.hpp"
#include "fracoint/errors.hpp"
#include "fracoint/fracnoise.hpp"
#include "fracoint/rng.hpp"

namespace fracoint {

namespace {

// Sub-stream tags under the simulation seed.
constexpr std::uint64_t kMixingStream = 0x5A5A;
constexpr std::uint64_t kInnovationStream = 0x1D1D;

std::pair<double, double> singular_extremes(const Matrix& a) {
  const EigenDecomposition gram = eig_sym_desc(matmul_transA(a, a));
  const double hi = std::max(gram.eigenvalues.front(), 0.0);
  const double lo = std::max(gram.eigenvalues.back(), 0.0);
  return {std::sqrt(hi), std::sqrt(lo)};
}

Matrix draw_mixing(const MixingSpec& mix, std::size_t q, std::uint64_t seed) {
  GaussianStream g(derive_seed(seed, kMixingStream));
  constexpr int kMaxDraws = 200;
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    Matrix a(q, q);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) a(i, j) = g.next();
    const auto [hi, lo] = singular_extremes(a);
    if (lo > mix.rank_floor * hi && hi <= mix.cond_cap * lo) return a;
  }
  throw numeric_error("simulate",
                      "could not draw a mixing matrix within the condition cap");
}

}  // namespace

void SimSpec::validate() const {
  const char* stage = "simulate";
  if (q < 1) throw config_error(stage, "dimension q must be >= 1");
  if (n < 2) throw config_error(stage, "sample length n must be >= 2");
  if (p < 1) throw config_error(stage, "p must be >= 1");
  partition.validate(q, stage);
  if (d.size() != partition.sizes.size())
    throw config_error(stage, "need one memory parameter per partition group");
  const double lo = -static_cast<double>(p) + 0.5;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (!(d[k] > lo && d[k] < 0.5))
      throw config_error(stage, "memory parameter d_" + std::to_string(k) +
                                    " outside (-p + 1/2, 1/2)");
    if (k > 0 && !(d[k - 1] > d[k]))
      throw config_error(stage, "memory parameters must be strictly decreasing");
  }
  if (!mixing.is_random()) {
    if (mixing.explicit_matrix.rows() != q || mixing.explicit_matrix.cols() != q)
      throw config_error(stage, "mixing matrix must be q x q");
    const auto [hi, lo_sv] = singular_extremes(mixing.explicit_matrix);
    if (!(lo_sv > mixing.rank_floor * hi))
      throw config_error(stage, "mixing matrix is rank deficient");
  }
  if (!innovation_cov.empty()) {
    if (innovation_cov.rows() != q || innovation_cov.cols() != q)
      throw config_error(stage, "innovation covariance must be q x q");
    cholesky_lower(innovation_cov, stage);  // SPD check
  }
}

TrueBases true_subspace_bases(const Matrix& a, const SubspacePartition& partition,
                              const std::vector<double>& d, double rank_floor) {
  const std::size_t q = a.rows();
  if (a.cols() != q) throw config_error("bases", "mixing matrix must be square");
  partition.validate(q, "bases");
  if (d.size() != partition.sizes.size())
    throw config_error("bases", "need one memory parameter per group");
  {
    const auto [hi, lo] = singular_extremes(a);
    if (!(lo > rank_floor * hi))
      throw numeric_error("bases", "mixing matrix is rank deficient");
  }

  // Incremental QR over the blocks of A: the columns contributed by block k
  // are an orthonormal basis of the complement chain's k-th slice.
  Matrix frame(q, q);
  std::size_t used = 0;
  TrueBases out;
  out.bases.reserve(partition.sizes.size());
  std::size_t col = 0;
  for (std::size_t a_k : partition.sizes) {
    const std::size_t first = used;
    for (std::size_t j = 0; j < a_k; ++j, ++col) {
      if (!gs_append_column(frame, used, a.column(col), 1e-8))
        throw numeric_error("bases",
                            "mixing matrix column " + std::to_string(col + 1) +
                                " is numerically dependent on earlier columns");
      ++used;
    }
    Matrix b(q, a_k);
    for (std::size_t j = 0; j < a_k; ++j)
      for (std::size_t i = 0; i < q; ++i) b(i, j) = frame(i, first + j);
    fix_column_signs(b);
    out.bases.push_back(std::move(b));
  }

  const std::size_t s = partition.s();
  out.alphas.resize(s + 1);
  if (s == 0) {
    // Single block spans everything; the estimated subspace is exact.
    out.alphas[0] = std::numeric_limits<double>::infinity();
  } else {
    out.alphas[0] = d[0] - d[1];
    for (std::size_t k = 1; k < s; ++k)
      out.alphas[k] = std::min(d[k - 1] - d[k], d[k] - d[k + 1]);
    out.alphas[s] = d[s - 1] - d[s];
  }
  return out;
}

SimulationOutput simulate_model(const SimSpec& spec) {
  spec.validate();
  const std::size_t q = spec.q;

  const Matrix a = spec.mixing.is_random()
                       ? draw_mixing(spec.mixing, q, spec.seed)
                       : spec.mixing.explicit_matrix;
  TrueBases truth = true_subspace_bases(a, spec.partition, spec.d,
                                        spec.mixing.rank_floor);

  // Longest innovation stream any column needs; columns with a smaller
  // integer shift simply get extra warm-up.
  const std::size_t burn = spec.effective_burn_in();
  int k_max = 0;
  for (std::size_t c = 0; c < q; ++c)
    k_max = std::max(k_max,
                     integer_shift_for_memory(spec.d[spec.partition.group_of(c)]));
  const std::size_t len = burn + spec.n + static_cast<std::size_t>(k_max);

  // One innovation stream, column-major fill, then the optional covariance
  // mixing across components at each time index.
  GaussianStream g(derive_seed(spec.seed, kInnovationStream));
  SeriesMatrix innov(len, q);
  for (std::size_t c = 0; c < q; ++c) {
    auto colspan = innov.column(c);
    for (std::size_t t = 0; t < len; ++t) colspan[t] = g.next();
  }
  if (!spec.innovation_cov.empty()) {
    const Matrix chol = cholesky_lower(spec.innovation_cov, "simulate");
    innov = apply_rowwise(innov, chol);
  }

  SeriesMatrix z(spec.n, q);
  for (std::size_t c = 0; c < q; ++c) {
    const double dc = spec.d[spec.partition.group_of(c)];
    const std::vector<double> x =
        frac_noise_from_innovations(innov.column(c), spec.n, dc);
    auto dst = z.column(c);
    for (std::size_t t = 0; t < spec.n; ++t) dst[t] = x[t];
  }

  SeriesMatrix y = apply_rowwise(z, a);
  if (spec.emit_levels) {
    for (int pass = 1; pass < spec.p; ++pass) {
      for (std::size_t c = 0; c < q; ++c) {
        auto col = y.column(c);
        for (std::size_t t = 1; t < spec.n; ++t) col[t] += col[t - 1];
      }
    }
  }
  return {std::move(y), std::move(truth), a};
}

SimSpec sim_spec_from_kv(const KvConfig& kv) {
  const char* stage = "simulate";
  SimSpec spec;
  spec.q = static_cast<std::size_t>(kv.get_long("q", 0));
  spec.n = static_cast<std::size_t>(kv.get_long("n", 0));
  spec.p = static_cast<int>(kv.get_long("p", 1));
  spec.seed = kv.get_u64("seed", 0);
  spec.emit_levels = kv.get_bool("emit_levels", false);
  const long burn = kv.get_long("burn_in", -1);
  spec.burn_in = burn < 0 ? SimSpec::kAutoBurnIn : static_cast<std::size_t>(burn);
  if (kv.has("partition")) spec.partition.sizes = kv.get_size_list("partition");
  if (kv.has("d")) spec.d = kv.get_double_list("d");
  spec.mixing.cond_cap = kv.get_double("mixing_cond_cap", 100.0);
  const std::string mixing = kv.get_string("mixing", "random");
  if (mixing != "random") {
    // Rows separated by ';', entries by ','.
    std::vector<std::vector<double>> rows;
    std::stringstream ss(mixing);
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(parse_double_list(row, stage));
    if (rows.empty()) throw config_error(stage, "empty mixing matrix");
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size())
        throw config_error(stage, "ragged mixing matrix rows");
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    spec.mixing.explicit_matrix = std::move(m);
  }
  const std::string sigma = kv.get_string("sigma", "identity");
  if (sigma != "identity") {
    std::vector<std::vector<double>> rows;
    std::stringstream ss(sigma);
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(parse_double_list(row, stage));
    if (rows.empty()) throw config_error(stage, "empty innovation covariance");
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size())
        throw config_error(stage, "ragged covariance rows");
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    spec.innovation_cov = std::move(m);
  }
  return spec;
}

namespace {

std::string matrix_to_rows(const Matrix& m) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out << ';';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
  }
  return out.str();
}

}  // namespace

std::string sim_spec_to_text(const SimSpec& spec) {
  std::ostringstream out;
  out.precision(17);
  out << "q=" << spec.q << "\n";
  out << "n=" << spec.n << "\n";
  out << "p=" << spec.p << "\n";
  out << "seed=" << spec.seed << "\n";
  out << "partition=";
  for (std::size_t k = 0; k < spec.partition.sizes.size(); ++k)
    out << (k ? "," : "") << spec.partition.sizes[k];
  out << "\n";
  out << "d=";
  for (std::size_t k = 0; k < spec.d.size(); ++k) out << (k ? "," : "") << spec.d[k];
  out << "\n";
  if (spec.burn_in != SimSpec::kAutoBurnIn) out << "burn_in=" << spec.burn_in << "\n";
  out << "emit_levels=" << (spec.emit_levels ? "true" : "false") << "\n";
  if (!spec.mixing.is_random())
    out << "mixing=" << matrix_to_rows(spec.mixing.explicit_matrix) << "\n";
  else
    out << "mixing=random\nmixing_cond_cap=" << spec.mixing.cond_cap << "\n";
  if (!spec.innovation_cov.empty())
    out << "sigma=" << matrix_to_rows(spec.innovation_cov) << "\n";
  return out.str();
}

}  // namespace fracoint
