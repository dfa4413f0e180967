#ifndef FRACOINT_MODEL_SIM_HPP
#define FRACOINT_MODEL_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fracoint/kv_config.hpp"
#include "fracoint/matrix.hpp"
#include "fracoint/subspace.hpp"

namespace fracoint {

// Mixing matrix A: either given explicitly or drawn with iid standard normal
// entries, redrawing until the condition number is at or below cond_cap.
struct MixingSpec {
  Matrix explicit_matrix;     // empty -> random generation
  double cond_cap = 100.0;
  double rank_floor = 1e-8;   // relative smallest-singular-value floor

  bool is_random() const { return explicit_matrix.empty(); }
};

struct SimSpec {
  std::size_t q = 0;
  SubspacePartition partition;   // true (s; a_0..a_s)
  std::vector<double> d;         // s+1 memory parameters, strictly decreasing
  int p = 1;                     // admissible d range is (-p + 1/2, 1/2)
  MixingSpec mixing;
  Matrix innovation_cov;         // empty -> identity
  std::size_t n = 0;
  std::size_t burn_in = kAutoBurnIn;  // default 10 n
  bool emit_levels = false;      // emit the (p-1)-fold cumulative sum
  std::uint64_t seed = 0;

  static constexpr std::size_t kAutoBurnIn = static_cast<std::size_t>(-1);
  std::size_t effective_burn_in() const {
    return burn_in == kAutoBurnIn ? 10 * n : burn_in;
  }
  void validate() const;
};

struct TrueBases {
  std::vector<Matrix> bases;   // B_0..B_s, q x a_k, orthonormal columns
  std::vector<double> alphas;  // memory-gap exponents; +inf when s = 0
};

// Orthonormal bases of the nested complement chain of A's blocks: B_0 spans
// the column space of the first block, B_k the part of the complement of
// blocks 0..k-1 lying inside the span of blocks 0..k. Built by incremental
// Gram-Schmidt, so beta' A_l = 0 holds exactly for beta in B_k, l < k.
TrueBases true_subspace_bases(const Matrix& a, const SubspacePartition& partition,
                              const std::vector<double>& d,
                              double rank_floor = 1e-8);

struct SimulationOutput {
  SeriesMatrix series;
  TrueBases truth;
  Matrix mixing;  // the realized A
};

// Fractional common-components draw: block k holds a_k independent fractional
// noises with memory d_k, innovations jointly N(0, Sigma), y_t = A z_t.
// Deterministic in the full SimSpec including the seed.
SimulationOutput simulate_model(const SimSpec& spec);

// key=value (de)serialization; understands the keys documented in the README.
SimSpec sim_spec_from_kv(const KvConfig& kv);
std::string sim_spec_to_text(const SimSpec& spec);

}  // namespace fracoint

#endif
