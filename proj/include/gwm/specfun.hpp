#pragma once

#include <functional>

#include "gwm/common.hpp"

namespace gwm {

/// Gamma function for complex argument (Lanczos approximation, g = 7,
/// 9 terms, with the reflection formula for Re z < 1/2).
/// Throws domain_error at the poles z = 0, -1, -2, ...
cplx gamma_complex(cplx z);

/// 1/Gamma(z), entire; zero at the nonpositive integers.
cplx reciprocal_gamma(cplx z);

/// Digamma psi(z) = Gamma'(z)/Gamma(z): recurrence shift to Re z > 8 plus the
/// asymptotic series; reflection for Re z < 1/2.
cplx digamma(cplx z);

/// Upper incomplete gamma  Gamma(a, x) = int_x^inf w^(a-1) e^(-w) dw,
/// a > 0, x >= 0.  Series for the lower function when x < a + 1, continued
/// fraction otherwise.
double upper_incomplete_gamma(double a, double x);

/// Regularized version Q(a, x) = Gamma(a, x)/Gamma(a).
double regularized_gamma_q(double a, double x);

/// Semifactorial ell!! = 1*3*...*ell for odd ell >= -1, with (-1)!! = 1.
double semifactorial(long ell);

/// Double-exponential (tanh-sinh) quadrature over the finite interval (a, b).
/// Integrable endpoint singularities are absorbed by the substitution, with
/// one caveat: the evaluation point is passed as a plain double, so distances
/// to a nonzero endpoint resolve only to machine epsilon there.  Keep power
/// singularities at an endpoint equal to 0 (substitute if needed); the
/// centering-constant integrands here always do.
/// `abs_tol` is the absolute error target.
cplx tanh_sinh(const std::function<cplx(double)>& f, double a, double b,
               double abs_tol);

/// Double-exponential quadrature over the half line (a, inf) for integrands
/// decaying at infinity (exp-sinh rule).
cplx exp_sinh(const std::function<cplx(double)>& f, double a, double abs_tol);

}  // namespace gwm
