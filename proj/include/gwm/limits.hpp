#pragma once

#include "gwm/moments.hpp"
#include "gwm/offspring.hpp"
#include "gwm/specfun.hpp"
#include "gwm/treesize.hpp"

namespace gwm {

/// mu(alpha) = E|T|^alpha for Re alpha < 1/2, by double-exponential
/// quadrature of  Gamma(1-alpha)^{-1} int_0^1 [log R(eta)]^{-alpha} d eta
/// split at eta = 1/2 with the substitutions eta = e^{-v} (left) and
/// eta = 1 - e^{-u} (right).
cplx mu_alpha(const OffspringLaw& law, cplx alpha);

/// Independent route: partial sum of n^alpha q_n over the size-law table
/// plus the fitted-model tail.  Agrees with the quadrature to ~1e-8 for
/// Re alpha <= 0.3 at N = 4096.
cplx mu_alpha_series_route(const TreeSizeLaw& size_law, cplx alpha);

/// mu' = E log|T| = -gamma - int_0^1 log log R(eta) d eta.
double mu_prime(const OffspringLaw& law);

/// Series route for mu' (partial sum + model tail); cross-check only.
double mu_prime_series_route(const TreeSizeLaw& size_law);

/// Limit variance constant of the shape functional: 4 (1 - log 2) / sigma^2.
double shape_variance_const(const OffspringLaw& law);

/// Limit variance of the imaginary-power functional at exponent i t:
/// Re[Gamma(it - 1/2)/Gamma(it)] / (sqrt(pi) sigma^2); positive for t != 0.
double imag_variance(const OffspringLaw& law, double t);

/// Second-order mean coefficient Gamma(alpha - 1/2)/(sqrt(2) sigma
/// Gamma(alpha)) in E X_n(alpha) = mu(alpha) n + coeff n^{1/2 + alpha} + ...
cplx mean2_coeff(const OffspringLaw& law, cplx alpha);

/// Coefficients in the shape-functional mean expansion
/// E X'_n(0) = mu' n + sqrt_coeff * n^{1/2} + log_coeff * log n + O(1):
/// sqrt_coeff = -sqrt(2 pi)/sigma, log_coeff = E[xi(xi-1)(xi-2)]/(3 sigma^4).
struct ShapeMeanCoeffs {
  double sqrt_coeff;
  double log_coeff;
};
ShapeMeanCoeffs shape_mean_coeffs(const OffspringLaw& law);

/// Leading even-moment coefficients of the shape functional, dual route:
/// recursion k2 = 2^{3/2}(1 - log 2),
/// k_{2k} = 2^{-3/2} sum_i C(2k,2i) k_{2i} k_{2(k-i)},  and closed form
/// 2^{3/2} (2k)! (2k-2)! / ((k-1)! k!) d1^k with d1 = (1 - log 2)/2.
double kappa_shape_recursion(unsigned k);
double kappa_shape_closed(unsigned k);

/// Same for imaginary powers at exponent i t: base
/// (2 pi)^{-1/2} Re[Gamma(it-1/2)/Gamma(it)], recursion with squared
/// binomials, closed form 2^{3/2} l! (2l-2)!/(l-1)! d1^l with
/// d1 = Re[Gamma(it-1/2)/Gamma(it)]/(4 sqrt(pi)).
double kappa_imag_recursion(double t, unsigned ell);
double kappa_imag_closed(double t, unsigned ell);

/// Limit moments of the normalized functionals:
/// shape, order 2k: (4(1-log2)/sigma^2)^k (2k-1)!!; odd orders 0.
double limit_moment_shape(const OffspringLaw& law, unsigned order);
/// imaginary at i t, balanced pair (l, l): variance^l l!.
double limit_moment_imag(const OffspringLaw& law, double t, unsigned ell);

/// Gaussian mixed moment E[z1^l z2^r] for jointly complex-normal (z1, z2)
/// with E z1^2 = k20, E z1 z2 = k11, E z2^2 = k02 (Wick closed form).
cplx wick_mixed_moment(cplx k20, cplx k11, cplx k02, unsigned ell, unsigned r);

/// Independent oracle: explicit enumeration of perfect matchings of
/// ell + r labelled slots.  Must agree with the closed form exactly.
cplx wick_matching_oracle(cplx k20, cplx k11, cplx k02, unsigned ell,
                          unsigned r);

/// The three base constants of the Re alpha < 0 limit law, estimated from
/// the exact engine at two sizes with Richardson extrapolation in n^{-eta},
/// eta = min(-Re a1, -Re a2, 1/2).
struct KappaBase {
  cplx k20, k11, k02;
  double uncertainty;  // magnitude of the applied extrapolation correction
};
KappaBase estimate_kappa_base(const OffspringLaw& law, cplx alpha1,
                              cplx alpha2, std::size_t truncation = 4096);

/// Residual of the functional identity
/// K = 2^{-3/2} sigma K^2 + (k20 x^2 + 2 k11 x y + k02 y^2)/(2^{3/2} sigma)
/// with K built as the truncated double series of the mixed-moment constants.
double kappa_identity_residual(const OffspringLaw& law, const KappaBase& kb,
                               double x, double y, unsigned max_order = 40);

/// Mean-expansion diagnostics against the exact engine.
struct ShapeMeanDiagnostics {
  double predicted_sqrt_coeff;  // sqrt(2 pi)/sigma
  double measured_sqrt_coeff;   // (mu' n - E X'_n(0)) / sqrt(n)
  double bounded_residual;      // after removing sqrt and log terms
};
ShapeMeanDiagnostics shape_mean_check(MomentEngine& engine, double mu_prime_val,
                                      std::size_t n);

struct PowerMeanDiagnostics {
  cplx predicted_coeff;   // Gamma(alpha-1/2)/(sqrt 2 sigma Gamma(alpha))
  cplx measured_coeff;    // (E X_n(alpha) - mu(alpha) n) / n^{1/2+alpha}
  double scaled_residual; // |E X_n(alpha) - mu(alpha) n| / sqrt(n)
};
PowerMeanDiagnostics power_mean_check(MomentEngine& engine, cplx alpha,
                                      cplx mu_alpha_val, std::size_t n);

}  // namespace gwm
