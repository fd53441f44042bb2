#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gwm/sampler.hpp"
#include "gwm/tolls.hpp"

namespace gwm {

/// Per-functional Monte Carlo statistics at fixed n.
struct TollStats {
  std::string toll;
  cplx mean;
  double se_mean_re = 0.0, se_mean_im = 0.0;
  double variance = 0.0;  // E|F - mean|^2
  double se_variance = 0.0;
  double m4 = 0.0;        // E|F - mean|^4
  double abs2_mean = 0.0;  // E|F|^2 (uncentered)
  double se_abs2_mean = 0.0;
  double skewness = 0.0;         // real functionals
  double excess_kurtosis = 0.0;  // real functionals
  /// Raw mixed moments E[F^l conj(F)^r], keyed by (l, r), l + r <= 4.
  std::map<std::pair<unsigned, unsigned>, cplx> mixed;
};

/// Cross-pair statistics: correlation of F_a with conj F_b and with F_b,
/// both computed from centered batch sums.
struct CrossStats {
  std::size_t a = 0, b = 0;
  cplx cov_plain;      // E[(F_a - m_a)(F_b - m_b)]
  cplx cov_conj;       // E[(F_a - m_a) conj(F_b - m_b)]
  double corr_with_conj = 0.0;  // |cov_plain| / sqrt(var_a var_b)
  double corr_conj = 0.0;       // |cov_conj| / sqrt(var_a var_b)
};

struct EmpiricalSummary {
  std::size_t n = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::size_t batches = 0;
  std::string strategy;
  std::vector<TollStats> per_toll;
  std::vector<CrossStats> cross;
};

/// F(T) = sum_v b_{|T_v|} over the fringe subtree sizes, with the toll
/// values looked up from a precomputed table (one exp/log per distinct
/// size); `table` must cover sizes up to max(sizes).
cplx functional_eval(const std::vector<std::uint32_t>& sizes,
                     const std::vector<cplx>& table);

/// Build the lookup table b_1..b_n for a toll.
std::vector<cplx> toll_table(const TollSequence& toll, std::size_t n);

/// Deterministic given the master seed: replicate r consumes the Philox
/// stream (seed, r); replicates are grouped into a fixed number of batches
/// (independent of the thread count) that are reduced in index order, and
/// the batches double as jackknife blocks for the standard errors.
EmpiricalSummary monte_carlo(const OffspringLaw& law, std::size_t n,
                             std::size_t reps,
                             const std::vector<TollSequence>& tolls,
                             std::uint64_t seed, unsigned threads);

}  // namespace gwm
