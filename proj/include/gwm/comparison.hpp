#pragma once

#include <optional>
#include <vector>

#include "gwm/limits.hpp"
#include "gwm/offspring.hpp"
#include "gwm/treesize.hpp"

namespace gwm {

/// Grid-certified pointwise order between two pgfs on (0, 1).
struct OrderVerdict {
  enum class Relation {
    kLeq,             // no strict witness either way
    kStrict,          // dominated everywhere, strict somewhere
    kPointwiseStrict, // dominated strictly at every grid point
    kIncomparable,    // strict witnesses in both directions
  };
  Relation relation;
  // The relation describes lower <= upper; reversed means the given pair
  // was ordered the other way (law2 <= law1).
  bool reversed = false;
  std::vector<double> witness_points;  // up to 2 grid points
  std::size_t grid_size = 0;
};

/// Compare Phi_1 and Phi_2 on a uniform grid of (0, 1); differences within
/// 1e-13 count as equality.  Verdicts are grid-certified, not proofs.
OrderVerdict phi_order(const OffspringLaw& law1, const OffspringLaw& law2,
                       std::size_t grid_size = 10000);

/// Check the strict mu-ordering along a chain of laws: mu(alpha) strictly
/// increasing along the chain for alpha < 0, strictly decreasing for
/// 0 < alpha < 1/2; mu' strictly decreasing.  Returns the values and the
/// minimal margin between neighbours.
struct MuOrderReport {
  bool ok;
  double min_margin;
  std::vector<double> values;
};
MuOrderReport mu_order_check(const std::vector<OffspringLaw>& laws,
                             double alpha);
MuOrderReport mu_prime_order_check(const std::vector<OffspringLaw>& laws);

/// E(|T| - 1 + t)^alpha for alpha < 0, t > 0, by two routes:
/// the q-series with model tail, and (for t > 1) the incomplete-gamma
/// integral representation.
struct ShiftedMoment {
  double series_route;
  std::optional<double> integral_route;  // present when t > 1
};
ShiftedMoment shifted_negative_moment(const OffspringLaw& law, double alpha,
                                      double t, std::size_t truncation = 4096);

/// Sign pattern (-1)^r h^(r)(t) >= 0 for h(t) = E(|T2|-1+t)^{-1} -
/// E(|T1|-1+t)^{-1}, derivatives taken term-wise in the q-series (exact in
/// n), with the fitted model completing the tail.  Requires the pgf order
/// hypothesis; refuses otherwise.
struct CompleteMonotonicityReport {
  bool ok;
  double min_value;  // most negative signed derivative encountered
  unsigned argmin_r;
  double argmin_t;
};
CompleteMonotonicityReport complete_monotonicity_check(
    const OffspringLaw& law1, const OffspringLaw& law2, unsigned r_max,
    const std::vector<double>& t_grid, std::size_t truncation = 4096);

/// The comparison-counterexample apparatus: the entire-pgf base law, the
/// largest admissible perturbation coefficient (power-series coefficients of
/// Phi + c g_eps nonnegative up to order 200), and the interval
/// I_eps = {t : g_eps(t) < 0}.
struct AppendixAFramework {
  OffspringLaw base;
  double c3_max;
  bool interval_empty;
  double interval_lo = 0.0;
  double interval_hi = 0.0;
};
AppendixAFramework appendix_a_framework(double eps);

/// h(x) = (-1)^r x^{-r} [e^{-x} - sum_{j<r} (-x)^j/j!]:  strictly positive,
/// strictly decreasing, with limit 1/r! at 0+.  Evaluated through the
/// cancellation-safe expansion of its integral representation when x < r.
double exp_remainder_h(double x, unsigned r);

/// Raw moment E xi^j from the truncated pmf.
double raw_moment(const OffspringLaw& law, unsigned j);

/// g(t) = (-1)^r t^{-r} r! [f(t) - sum_{j<r} (-1)^j m_j t^j / j!] with
/// f(t) = E e^{-t xi} = Phi(e^{-t}); nonnegative and weakly increasing to
/// m_r as t decreases to 0.
double laplace_remainder_g(const OffspringLaw& law, unsigned r, double t);

}  // namespace gwm
