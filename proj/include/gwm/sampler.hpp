#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwm/offspring.hpp"
#include "gwm/rng.hpp"

namespace gwm {

/// Preorder degree sequence of an ordered rooted tree with n vertices:
/// sum d_i = n - 1 and the partial sums S_k = sum_{i<=k} (d_i - 1) stay
/// nonnegative for k < n with S_n = -1.
struct DegreeSequence {
  std::vector<std::uint32_t> degrees;
  std::size_t size() const { return degrees.size(); }
};

/// Throws validation_error if the sequence is not a valid preorder encoding.
void validate_degree_sequence(const DegreeSequence& seq);

/// Fringe subtree sizes in preorder positions (root gets n), by one reverse
/// stack pass.  Throws on invalid input.
std::vector<std::uint32_t> subtree_sizes(const DegreeSequence& seq);

/// Exact sampler of the conditioned tree T_n as a degree sequence: draw
/// (xi_1..xi_n) i.i.d. conditioned on the sum n - 1 with a law-specific
/// exact scheme, then apply the unique cycle-lemma rotation.
///
/// Schemes: Poisson -> multinomial occupancy; geometric -> uniform weak
/// compositions (stars and bars); finite support -> sequential sampling from
/// a partial-sum probability table when n <= 10^4 (float rows, renormalized),
/// rejection otherwise; any other law -> rejection with a trial budget.
class ConditionedSampler {
 public:
  ConditionedSampler(OffspringLaw law, std::size_t n);

  DegreeSequence sample(Philox& rng) const;

  const std::string& strategy() const { return strategy_; }
  std::size_t tree_size() const { return n_; }

 private:
  void sample_conditioned_degrees(Philox& rng,
                                  std::vector<std::uint32_t>& deg) const;

  OffspringLaw law_;
  std::size_t n_;
  std::string strategy_;
  // dp-table: row r holds P(xi_1 + ... + xi_r = s) for s = 0..n-1.
  std::vector<std::vector<float>> dp_rows_;
  // rejection / dp: cumulative pmf.
  std::vector<double> cdf_;
  std::vector<std::size_t> support_;
};

}  // namespace gwm
