#pragma once

#include <map>
#include <string>
#include <vector>

#include "gwm/tolls.hpp"
#include "gwm/treesize.hpp"

namespace gwm {

/// Exact conditional moments E[prod_i F_{b_i}(T_n)] through the
/// generating-function recursion: for the toll multiset A,
///
///   M_A(z) = (z y'(z)/y(z)) * sum over ordered partitions (I0; I1..Im) of A
///            with I1..Im nonempty proper, divided by m! for the ordering, of
///            B^{(.)I0} (.) [ z M_{I1} ... M_{Im} Phi^(m)(y(z)) ],
///
/// where (.) is the Hadamard product.  Iterating unordered partitions cancels
/// the m!.  Sub-multisets are memoized per engine instance, so an engine is
/// cheap to reuse across toll sets and n values at a fixed truncation.
///
/// An engine instance is not safe for concurrent calls (the memo is shared
/// across invocations); evaluate distinct toll multisets concurrently by
/// giving each thread its own engine.
class MomentEngine {
 public:
  static constexpr std::size_t kMaxTolls = 6;

  MomentEngine(OffspringLaw law, std::size_t truncation);

  const TreeSizeLaw& size_law() const { return size_law_; }
  std::size_t truncation() const { return n_; }

  /// Phi^(m)(y(z)) via the derivative ladder
  /// Phi^(m+1)(y(z)) = (d/dz Phi^(m)(y(z))) / y'(z); m = 0 is y(z)/z.
  const TruncatedSeries& phi_m_of_y(unsigned m);

  /// The series M_A(z) = sum_n q_n E[prod_{i in A} F_{b_i}(T_n)] z^n.
  /// An empty multiset yields y(z).  Throws guard_error for |A| > kMaxTolls.
  TruncatedSeries moment_series(const std::vector<TollSequence>& tolls);

  /// Coefficient n of the moment series divided by q_n.
  /// Throws domain_error when q_n = 0 (unattainable size).
  cplx conditional_moment(std::size_t n,
                          const std::vector<TollSequence>& tolls);

 private:
  TruncatedSeries compute_multiset(const std::vector<int>& ids);
  const TruncatedSeries& memoized(const std::vector<int>& ids);
  int toll_id(const TollSequence& toll);

  std::size_t n_;           // public truncation
  std::size_t work_n_;      // internal margin for the derivative ladder
  TreeSizeLaw size_law_;
  TruncatedSeries y_;             // tree-size series at work_n_
  TruncatedSeries zy_prime_over_y_;
  std::vector<TruncatedSeries> phi_ladder_;
  std::vector<TollSequence> toll_pool_;
  std::vector<TruncatedSeries> toll_series_;
  std::map<std::vector<int>, TruncatedSeries> memo_;
};

/// Ground-truth oracle: sum over all ordered rooted trees with n <= 9
/// vertices, weighted by prod_v p_deg(v), of prod_i F_{b_i}(T), divided by
/// q_n.  The enumeration recomputes q_n as the empty-product case and checks
/// it against the triangular recursion to 1e-12.
cplx enumerate_moment(const OffspringLaw& law, std::size_t n,
                      const std::vector<TollSequence>& tolls);

/// Exact conditional moments for a batch of sizes, by either route.
struct MomentTable {
  enum class Route { kSeries, kEnumeration };
  std::string law_name;
  std::vector<TollSequence> tolls;
  std::map<std::size_t, cplx> values;
  Route route = Route::kSeries;
};

MomentTable build_moment_table(MomentTable::Route route,
                               const OffspringLaw& law,
                               const std::vector<TollSequence>& tolls,
                               const std::vector<std::size_t>& sizes,
                               std::size_t truncation);

}  // namespace gwm
