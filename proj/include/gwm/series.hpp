#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "gwm/common.hpp"

namespace gwm {

/// A complex power series truncated after z^N: coefficients c_0..c_N.
///
/// All arithmetic is exact on the stored prefix: the result of any operation
/// carries the minimum truncation of its operands (division and
/// differentiation lose the orders they must), so a coefficient that is
/// present is never silently contaminated by missing higher-order terms.
class TruncatedSeries {
 public:
  TruncatedSeries() : coeffs_(1, cplx{}) {}
  explicit TruncatedSeries(std::size_t truncation)
      : coeffs_(truncation + 1, cplx{}) {}
  explicit TruncatedSeries(std::vector<cplx> coeffs);

  std::size_t truncation() const { return coeffs_.size() - 1; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  cplx operator[](std::size_t n) const { return coeffs_[n]; }
  cplx& operator[](std::size_t n) { return coeffs_[n]; }

  /// Copy restricted (or zero-extended) to truncation M.
  TruncatedSeries truncated(std::size_t m) const;

  static TruncatedSeries zero(std::size_t truncation) {
    return TruncatedSeries(truncation);
  }
  static TruncatedSeries one(std::size_t truncation);
  /// The monomial z.
  static TruncatedSeries z(std::size_t truncation);

 private:
  std::vector<cplx> coeffs_;
};

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries scale(const TruncatedSeries& a, cplx lambda);

/// Cauchy product, c_n = sum_{j<=n} a_j b_{n-j}.  Schoolbook O(N^2).
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// Coefficientwise product, c_n = a_n b_n.
TruncatedSeries hadamard(const TruncatedSeries& a, const TruncatedSeries& b);

/// Series division a/b.  Common leading zero coefficients are cancelled
/// first; after cancellation b must have a nonzero constant term, and a must
/// not have a lower leading order than b.  Throws domain_error otherwise.
TruncatedSeries divide(const TruncatedSeries& a, const TruncatedSeries& b);

/// Termwise derivative; the result's truncation drops by one.
TruncatedSeries differentiate(const TruncatedSeries& a);

/// Coefficients of the generalized polylogarithm: c_0 = 0 and, for n >= 1,
/// c_n = (log n)^r * n^(-alpha) with the principal branch
/// n^(-alpha) = exp(-alpha log n).
TruncatedSeries polylog_coeffs(cplx alpha, unsigned r, std::size_t truncation);

/// Debug dump, one CSV row "n,re,im" per coefficient (17 significant digits).
void dump_csv(const TruncatedSeries& s, std::ostream& os);

}  // namespace gwm
