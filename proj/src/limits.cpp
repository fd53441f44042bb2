#include "gwm/limits.hpp"

#include <cmath>
#include <vector>

namespace gwm {

namespace {

const double kLn2 = std::log(2.0);

// ln(log R(1 - e^{-u})) for u >= ln 2; far in the tail log R collapses to
// the quadratic regime variance * (1-eta)^2 / 2.
double loglogR_right(const OffspringLaw& law, double u) {
  if (u > 100.0) return std::log(0.5 * law.variance()) - 2.0 * u;
  const double s = std::exp(-u);
  const double eta = 1.0 - s;
  const double g = law.pgf_gap_from_s(s) / eta;
  const double lr = g < 0.5 ? std::log1p(g)
                            : std::log(law.pgf_gap_from_s(s) + eta) -
                                  std::log(eta);
  return std::log(lr);
}

// ln(log R(e^{-v})) for v >= ln 2; here log R ~ v + log p0.
double loglogR_left(const OffspringLaw& law, double v) {
  if (v > 100.0) return std::log(v + std::log(law.pmf(0)));
  const double eta = std::exp(-v);
  return std::log(log_r_eval(law, eta));
}

// Binomial coefficients as exact doubles (arguments stay below 2^53).
double binom(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double acc = 1.0;
  for (unsigned j = 1; j <= k; ++j) acc = acc * double(n - k + j) / double(j);
  return acc;
}

double imag_base_ratio(double t) {
  if (t == 0.0)
    throw domain_error("imaginary-power constants require t != 0");
  const cplx it{0.0, t};
  return (gamma_complex(it - 0.5) / gamma_complex(it)).real();
}

}  // namespace

cplx mu_alpha(const OffspringLaw& law, cplx alpha) {
  if (alpha.real() >= 0.5 - 1e-6)
    throw domain_error(
        "mu_alpha: E|T|^alpha diverges for Re alpha >= 1/2");
  const cplx a = alpha;
  const cplx left = exp_sinh(
      [&](double v) { return std::exp(-a * loglogR_left(law, v) - v); }, kLn2,
      1e-12);
  const cplx right = exp_sinh(
      [&](double u) { return std::exp(-a * loglogR_right(law, u) - u); },
      kLn2, 1e-12);
  return (left + right) / gamma_complex(1.0 - alpha);
}

cplx mu_alpha_series_route(const TreeSizeLaw& size_law, cplx alpha) {
  if (alpha.real() >= 0.5 - 1e-6)
    throw domain_error("mu_alpha_series_route: requires Re alpha < 1/2");
  cplx acc{};
  for (std::size_t n = 1; n <= size_law.truncation(); ++n) {
    const double qn = size_law.q(n);
    if (qn != 0.0) acc += qn * std::exp(alpha * std::log(double(n)));
  }
  return acc + size_law.tail_sum_power(alpha);
}

double mu_prime(const OffspringLaw& law) {
  const cplx left = exp_sinh(
      [&](double v) {
        return cplx{loglogR_left(law, v) * std::exp(-v)};
      },
      kLn2, 1e-12);
  const cplx right = exp_sinh(
      [&](double u) {
        return cplx{loglogR_right(law, u) * std::exp(-u)};
      },
      kLn2, 1e-12);
  return -kEulerGamma - (left + right).real();
}

double mu_prime_series_route(const TreeSizeLaw& size_law) {
  double acc = 0.0;
  for (std::size_t n = 2; n <= size_law.truncation(); ++n) {
    const double qn = size_law.q(n);
    if (qn != 0.0) acc += qn * std::log(double(n));
  }
  return acc + size_law.tail_sum_log();
}

double shape_variance_const(const OffspringLaw& law) {
  return 4.0 * (1.0 - kLn2) / law.variance();
}

double imag_variance(const OffspringLaw& law, double t) {
  return imag_base_ratio(t) / (std::sqrt(kPi) * law.variance());
}

cplx mean2_coeff(const OffspringLaw& law, cplx alpha) {
  const double sigma = std::sqrt(law.variance());
  // 1/Gamma(alpha) vanishes at nonpositive integer alpha; the coefficient is
  // entire there.
  return gamma_complex(alpha - 0.5) * reciprocal_gamma(alpha) /
         (std::sqrt(2.0) * sigma);
}

ShapeMeanCoeffs shape_mean_coeffs(const OffspringLaw& law) {
  const double sigma = std::sqrt(law.variance());
  const double var = law.variance();
  return ShapeMeanCoeffs{-std::sqrt(2.0 * kPi) / sigma,
                         law.third_factorial_moment() / (3.0 * var * var)};
}

double kappa_shape_recursion(unsigned k) {
  if (k < 1 || k > 12)
    throw domain_error("kappa_shape: requires 1 <= k <= 12");
  std::vector<double> kap(k + 1, 0.0);
  kap[1] = std::pow(2.0, 1.5) * (1.0 - kLn2);
  for (unsigned j = 2; j <= k; ++j) {
    double acc = 0.0;
    for (unsigned i = 1; i < j; ++i)
      acc += binom(2 * j, 2 * i) * kap[i] * kap[j - i];
    kap[j] = std::pow(2.0, -1.5) * acc;
  }
  return kap[k];
}

double kappa_shape_closed(unsigned k) {
  if (k < 1 || k > 12)
    throw domain_error("kappa_shape: requires 1 <= k <= 12");
  const double d1 = 0.5 * (1.0 - kLn2);
  // (2k)! (2k-2)! / ((k-1)! k!)
  double fac = 1.0;
  for (unsigned j = 2; j <= 2 * k; ++j) fac *= double(j);
  for (unsigned j = 2; j <= 2 * k - 2; ++j) fac *= double(j);
  for (unsigned j = 2; j <= k - 1; ++j) fac /= double(j);
  for (unsigned j = 2; j <= k; ++j) fac /= double(j);
  return std::pow(2.0, 1.5) * fac * std::pow(d1, double(k));
}

double kappa_imag_recursion(double t, unsigned ell) {
  if (ell < 1 || ell > 12)
    throw domain_error("kappa_imag: requires 1 <= ell <= 12");
  std::vector<double> kap(ell + 1, 0.0);
  kap[1] = imag_base_ratio(t) / std::sqrt(2.0 * kPi);
  for (unsigned j = 2; j <= ell; ++j) {
    double acc = 0.0;
    for (unsigned i = 1; i < j; ++i) {
      const double b = binom(j, i);
      acc += b * b * kap[i] * kap[j - i];
    }
    kap[j] = std::pow(2.0, -1.5) * acc;
  }
  return kap[ell];
}

double kappa_imag_closed(double t, unsigned ell) {
  if (ell < 1 || ell > 12)
    throw domain_error("kappa_imag: requires 1 <= ell <= 12");
  const double d1 = imag_base_ratio(t) / (4.0 * std::sqrt(kPi));
  // ell! (2 ell - 2)! / (ell - 1)!
  double fac = 1.0;
  for (unsigned j = 2; j <= ell; ++j) fac *= double(j);
  for (unsigned j = ell; j <= 2 * ell - 2; ++j) fac *= double(j);
  return std::pow(2.0, 1.5) * fac * std::pow(d1, double(ell));
}

double limit_moment_shape(const OffspringLaw& law, unsigned order) {
  if (order % 2 == 1) return 0.0;
  const unsigned k = order / 2;
  if (k == 0) return 1.0;
  return std::pow(shape_variance_const(law), double(k)) *
         semifactorial(2 * long(k) - 1);
}

double limit_moment_imag(const OffspringLaw& law, double t, unsigned ell) {
  double fac = 1.0;
  for (unsigned j = 2; j <= ell; ++j) fac *= double(j);
  return std::pow(imag_variance(law, t), double(ell)) * fac;
}

cplx wick_mixed_moment(cplx k20, cplx k11, cplx k02, unsigned ell,
                       unsigned r) {
  if ((ell + r) % 2 == 1) return cplx{};
  cplx acc{};
  for (unsigned j = ell % 2; j <= std::min(ell, r); j += 2) {
    double fac = binom(ell, j) * binom(r, j);
    for (unsigned i = 2; i <= j; ++i) fac *= double(i);  // j!
    fac *= semifactorial(long(ell) - long(j) - 1) *
           semifactorial(long(r) - long(j) - 1);
    acc += fac * std::pow(k11, double(j)) *
           std::pow(k20, double((ell - j) / 2)) *
           std::pow(k02, double((r - j) / 2));
  }
  return acc;
}

namespace {

cplx matchings(std::vector<int>& slot, unsigned ell, cplx k20, cplx k11,
               cplx k02) {
  std::size_t first = 0;
  while (first < slot.size() && slot[first] != 0) ++first;
  if (first == slot.size()) return cplx{1.0};
  slot[first] = 1;
  cplx acc{};
  for (std::size_t j = first + 1; j < slot.size(); ++j) {
    if (slot[j] != 0) continue;
    slot[j] = 1;
    const bool a1 = first < ell, a2 = j < ell;
    const cplx pair = (a1 && a2) ? k20 : (!a1 && !a2) ? k02 : k11;
    acc += pair * matchings(slot, ell, k20, k11, k02);
    slot[j] = 0;
  }
  slot[first] = 0;
  return acc;
}

}  // namespace

cplx wick_matching_oracle(cplx k20, cplx k11, cplx k02, unsigned ell,
                          unsigned r) {
  if ((ell + r) % 2 == 1) return cplx{};
  if (ell + r > 12)
    throw guard_error("wick_matching_oracle: capped at ell + r <= 12");
  std::vector<int> slot(ell + r, 0);
  return matchings(slot, ell, k20, k11, k02);
}

KappaBase estimate_kappa_base(const OffspringLaw& law, cplx alpha1,
                              cplx alpha2, std::size_t truncation) {
  if (alpha1.real() >= 0.0 || alpha2.real() >= 0.0)
    throw domain_error("estimate_kappa_base: requires Re alpha < 0");
  const cplx mu1 = mu_alpha(law, alpha1);
  const cplx mu2 = mu_alpha(law, alpha2);
  const TollSequence t1 = TollSequence::centered_power(alpha1, mu1);
  const TollSequence t2 = TollSequence::centered_power(alpha2, mu2);

  MomentEngine engine(law, truncation);
  const unsigned h = law.span();
  auto attain_at_most = [&](std::size_t n) { return n - (n - 1) % h; };
  const std::size_t n2 = attain_at_most(truncation);
  const std::size_t n1 = attain_at_most(std::max<std::size_t>(truncation / 2, 2));
  const double eta =
      std::min({-alpha1.real(), -alpha2.real(), 0.5});
  const double rho = std::pow(double(n2) / double(n1), -eta);

  double worst_correction = 0.0;
  auto extrapolate = [&](const std::vector<TollSequence>& tolls) {
    const cplx v1 = engine.conditional_moment(n1, tolls) / double(n1);
    const cplx v2 = engine.conditional_moment(n2, tolls) / double(n2);
    const cplx est = (v2 - rho * v1) / (1.0 - rho);
    worst_correction = std::max(worst_correction, std::abs(est - v2));
    return est;
  };

  KappaBase kb;
  kb.k20 = extrapolate({t1, t1});
  kb.k11 = extrapolate({t1, t2});
  kb.k02 = extrapolate({t2, t2});
  kb.uncertainty = worst_correction;
  return kb;
}

double kappa_identity_residual(const OffspringLaw& law, const KappaBase& kb,
                               double x, double y, unsigned max_order) {
  const double sigma = std::sqrt(law.variance());
  cplx big_k{};
  for (unsigned s = 2; s <= max_order; s += 2) {
    const double pre =
        semifactorial(long(s) - 3) / (sigma * std::pow(2.0, (s - 1) / 2.0));
    for (unsigned ell = 0; ell <= s; ++ell) {
      const unsigned r = s - ell;
      const cplx hat =
          pre * wick_mixed_moment(kb.k20, kb.k11, kb.k02, ell, r);
      double fac = 1.0;
      for (unsigned j = 2; j <= ell; ++j) fac *= double(j);
      for (unsigned j = 2; j <= r; ++j) fac *= double(j);
      big_k += hat * std::pow(x, double(ell)) * std::pow(y, double(r)) / fac;
    }
  }
  const cplx quad = kb.k20 * x * x + 2.0 * kb.k11 * x * y + kb.k02 * y * y;
  const cplx rhs = std::pow(2.0, -1.5) * sigma * big_k * big_k +
                   quad / (std::pow(2.0, 1.5) * sigma);
  return std::abs(big_k - rhs);
}

ShapeMeanDiagnostics shape_mean_check(MomentEngine& engine,
                                      double mu_prime_val, std::size_t n) {
  const OffspringLaw& law = engine.size_law().law();
  const ShapeMeanCoeffs coeffs = shape_mean_coeffs(law);
  const TollSequence toll = TollSequence::centered_log(mu_prime_val);
  const double centered_mean =
      engine.conditional_moment(n, {toll}).real();  // E X' - mu' n
  const double sqrt_n = std::sqrt(double(n));
  ShapeMeanDiagnostics d;
  d.predicted_sqrt_coeff = -coeffs.sqrt_coeff;  // sqrt(2 pi)/sigma
  d.measured_sqrt_coeff = -centered_mean / sqrt_n;
  d.bounded_residual =
      -centered_mean + coeffs.sqrt_coeff * sqrt_n + coeffs.log_coeff *
      std::log(double(n));
  return d;
}

PowerMeanDiagnostics power_mean_check(MomentEngine& engine, cplx alpha,
                                      cplx mu_alpha_val, std::size_t n) {
  const TollSequence toll = TollSequence::centered_power(alpha, mu_alpha_val);
  const cplx centered_mean = engine.conditional_moment(n, {toll});
  PowerMeanDiagnostics d;
  d.predicted_coeff = mean2_coeff(engine.size_law().law(), alpha);
  d.measured_coeff =
      centered_mean / std::exp((0.5 + alpha) * std::log(double(n)));
  d.scaled_residual = std::abs(centered_mean) / std::sqrt(double(n));
  return d;
}

}  // namespace gwm
