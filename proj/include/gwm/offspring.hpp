#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwm/common.hpp"

namespace gwm {

/// A critical offspring distribution: mean exactly 1, variance in (0, inf).
///
/// Infinite-support families are exposed through closed-form pgfs plus a
/// lazily truncated pmf whose tail mass is below 1e-15; the moment engine
/// only ever needs finitely many p_k.
class OffspringLaw {
 public:
  enum class Family {
    kMAry,        // Bi(m, 1/m), m >= 2 ("binary" is m = 2)
    kPoisson,     // Po(1)
    kFullMAry,    // m Bi(1, 1/m), m >= 2 ("fullbinary" is m = 2)
    kGeometric,   // Ge(1/2)
    kCFamily,     // p0 = p2 = c/2, p1 = 1 - c
    kMixture,     // lambda * Phi_fullmary(m) + (1 - lambda) * Phi_fullbinary
    kAppendixA,   // the entire-pgf law with p1 = 1/2 and 8^k/k! tail
    kAppendixAPerturbed,  // AppendixA pgf plus c3 * g_eps
    kCustom,      // finite pmf list
  };

  const std::string& name() const { return name_; }
  Family family() const { return family_; }

  /// p_k (0 beyond the truncation).
  double pmf(std::size_t k) const {
    return k < pmf_.size() ? pmf_[k] : 0.0;
  }
  /// Largest index K kept in the pmf table; for infinite-support laws the
  /// tail mass beyond K is below 1e-15.
  std::size_t pmf_truncation() const { return pmf_.size() - 1; }
  const std::vector<double>& pmf_table() const { return pmf_; }

  double variance() const { return variance_; }
  /// E[xi(xi-1)(xi-2)]; +infinity would be reported as such, but every
  /// built-in family has all moments finite.
  double third_factorial_moment() const { return third_factorial_; }
  /// gcd of the support differences; tree sizes are attainable only for
  /// n == 1 (mod span).
  unsigned span() const { return span_; }

  /// Phi(t) = E t^xi, |t| <= 1.  Closed form where the family admits one.
  cplx pgf(cplx t) const;
  /// m-th derivative of Phi at t, m >= 1.
  cplx pgf_derivative(unsigned m, cplx t) const;

  /// Phi(1-s) - (1-s) for s in [0, 1], evaluated without cancellation even
  /// for s near 0 (where the value is ~ variance * s^2 / 2).  This is the
  /// kernel of R(eta) = Phi(eta)/eta used by the centering-constant
  /// quadratures.
  double pgf_gap_from_s(double s) const;
  double pgf_gap(double t) const { return pgf_gap_from_s(1.0 - t); }

  // Family parameters (meaningful per family; see factory functions).
  unsigned m_param() const { return m_; }
  double c_param() const { return c_; }
  double lambda_param() const { return lambda_; }
  double eps_param() const { return eps_; }
  double c3_param() const { return c3_; }

  static OffspringLaw binary() { return mary(2); }
  static OffspringLaw mary(unsigned m);
  static OffspringLaw poisson();
  static OffspringLaw full_binary() { return full_mary(2); }
  static OffspringLaw full_mary(unsigned m);
  static OffspringLaw geometric();
  static OffspringLaw c_family(double c);
  static OffspringLaw mixture(double lambda, unsigned m);
  static OffspringLaw appendix_a();
  static OffspringLaw appendix_a_perturbed(double eps, double c3);
  static OffspringLaw custom(const std::vector<double>& pmf);

 private:
  OffspringLaw() = default;
  void validate() const;
  void finish(std::string name);

  std::string name_;
  Family family_ = Family::kCustom;
  std::vector<double> pmf_;
  double variance_ = 0.0;
  double third_factorial_ = 0.0;
  unsigned span_ = 1;
  unsigned m_ = 0;
  double c_ = 0.0;
  double lambda_ = 0.0;
  double eps_ = 0.0;
  double c3_ = 0.0;
};

/// Parse a law descriptor: "binary", "mary:5", "poisson", "fullbinary",
/// "fullmary:3", "geometric", "cfam:0.5", "mix:0.3:4", "appxa",
/// "appxa:0.01:0.002", "custom:0.25,0.5,0.25".
OffspringLaw make_law(const std::string& descriptor);

/// Power series coefficients of the perturbation
/// g_eps(t) = [1 - cos(4 pi (3t/5 + 2/5))]/2 - eps (1-t)^3  about t = 0.
std::vector<double> g_eps_coeffs(double eps, std::size_t count);

/// g_eps evaluated pointwise on [0, 1].
double g_eps_eval(double eps, double t);

}  // namespace gwm
