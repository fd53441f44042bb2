#include "gwm/comparison.hpp"

#include <algorithm>
#include <cmath>

namespace gwm {

namespace {

constexpr double kEqualityBand = 1e-13;

double phi_real(const OffspringLaw& law, double t) {
  return t + law.pgf_gap(t);
}

}  // namespace

OrderVerdict phi_order(const OffspringLaw& law1, const OffspringLaw& law2,
                       std::size_t grid_size) {
  if (grid_size < 100) throw domain_error("phi_order: grid_size >= 100");
  OrderVerdict v;
  v.grid_size = grid_size;
  bool above = false, below = false;  // law2 above / below law1
  bool all_above = true, all_below = true;
  double above_witness = -1.0, below_witness = -1.0;
  for (std::size_t i = 1; i <= grid_size; ++i) {
    const double t = double(i) / double(grid_size + 1);
    const double d = phi_real(law2, t) - phi_real(law1, t);
    if (d > kEqualityBand) {
      if (!above) above_witness = t;
      above = true;
      all_below = false;
    } else if (d < -kEqualityBand) {
      if (!below) below_witness = t;
      below = true;
      all_above = false;
    } else {
      all_above = all_below = false;
    }
  }
  if (above && below) {
    v.relation = OrderVerdict::Relation::kIncomparable;
    v.witness_points = {above_witness, below_witness};
  } else if (above) {
    v.relation = all_above ? OrderVerdict::Relation::kPointwiseStrict
                           : OrderVerdict::Relation::kStrict;
    v.witness_points = {above_witness};
  } else if (below) {
    v.reversed = true;
    v.relation = all_below ? OrderVerdict::Relation::kPointwiseStrict
                           : OrderVerdict::Relation::kStrict;
    v.witness_points = {below_witness};
  } else {
    v.relation = OrderVerdict::Relation::kLeq;
  }
  return v;
}

namespace {

MuOrderReport order_report(std::vector<double> values, bool increasing) {
  MuOrderReport rep;
  rep.values = std::move(values);
  rep.ok = true;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rep.values.size(); ++i) {
    const double margin = increasing ? rep.values[i] - rep.values[i - 1]
                                     : rep.values[i - 1] - rep.values[i];
    rep.min_margin = std::min(rep.min_margin, margin);
    if (margin <= 0.0) rep.ok = false;
  }
  return rep;
}

}  // namespace

MuOrderReport mu_order_check(const std::vector<OffspringLaw>& laws,
                             double alpha) {
  if (alpha >= 0.5 || alpha == 0.0)
    throw domain_error("mu_order_check: requires alpha < 1/2, alpha != 0");
  std::vector<double> values;
  for (const OffspringLaw& law : laws)
    values.push_back(mu_alpha(law, cplx{alpha}).real());
  return order_report(std::move(values), /*increasing=*/alpha < 0.0);
}

MuOrderReport mu_prime_order_check(const std::vector<OffspringLaw>& laws) {
  std::vector<double> values;
  for (const OffspringLaw& law : laws) values.push_back(mu_prime(law));
  return order_report(std::move(values), /*increasing=*/false);
}

ShiftedMoment shifted_negative_moment(const OffspringLaw& law, double alpha,
                                      double t, std::size_t truncation) {
  if (alpha >= 0.0)
    throw domain_error("shifted_negative_moment: requires alpha < 0");
  if (!(t > 0.0))
    throw domain_error("shifted_negative_moment: requires t > 0");
  ShiftedMoment out;

  TreeSizeLaw ts(law, truncation);
  double acc = 0.0;
  for (std::size_t n = 1; n <= truncation; ++n) {
    const double qn = ts.q(n);
    if (qn != 0.0) acc += qn * std::pow(double(n) - 1.0 + t, alpha);
  }
  out.series_route = acc + ts.tail_sum_power(cplx{alpha}, t - 1.0).real();

  if (t > 1.0) {
    const double a = -alpha;
    const cplx integral = tanh_sinh(
        [&](double eta) {
          const double x = (t - 1.0) * log_r_eval(law, eta);
          return cplx{1.0 - regularized_gamma_q(a, x)};
        },
        0.0, 1.0, 1e-11);
    out.integral_route = std::pow(t - 1.0, alpha) * integral.real();
  }
  return out;
}

CompleteMonotonicityReport complete_monotonicity_check(
    const OffspringLaw& law1, const OffspringLaw& law2, unsigned r_max,
    const std::vector<double>& t_grid, std::size_t truncation) {
  if (r_max > 3)
    throw domain_error("complete_monotonicity_check: r_max capped at 3");
  {
    const OrderVerdict v = phi_order(law1, law2);
    if (v.relation == OrderVerdict::Relation::kIncomparable || v.reversed)
      throw domain_error(
          "complete_monotonicity_check: pgf order hypothesis not satisfied");
  }
  TreeSizeLaw ts1(law1, truncation), ts2(law2, truncation);
  CompleteMonotonicityReport rep;
  rep.ok = true;
  rep.min_value = std::numeric_limits<double>::infinity();
  rep.argmin_r = 0;
  rep.argmin_t = 0.0;
  for (unsigned r = 0; r <= r_max; ++r) {
    double rfac = 1.0;
    for (unsigned j = 2; j <= r; ++j) rfac *= double(j);
    for (double t : t_grid) {
      // (-1)^r h^(r)(t) = sum_n (q2_n - q1_n) r! (n-1+t)^{-r-1}
      double acc = 0.0;
      for (std::size_t n = 1; n <= truncation; ++n) {
        const double dq = ts2.q(n) - ts1.q(n);
        if (dq != 0.0)
          acc += dq * rfac * std::pow(double(n) - 1.0 + t, -double(r) - 1.0);
      }
      acc += rfac * (ts2.tail_sum_power(cplx{-double(r) - 1.0}, t - 1.0).real() -
                     ts1.tail_sum_power(cplx{-double(r) - 1.0}, t - 1.0).real());
      if (acc < rep.min_value) {
        rep.min_value = acc;
        rep.argmin_r = r;
        rep.argmin_t = t;
      }
      if (acc < -1e-10) rep.ok = false;
    }
  }
  return rep;
}

AppendixAFramework appendix_a_framework(double eps) {
  if (eps < 0.0 || eps > 1.0)
    throw domain_error("appendix_a_framework: requires eps in [0, 1]");
  AppendixAFramework out{OffspringLaw::appendix_a(), 0.0, true};

  // Base pgf coefficients up to order 200 from the closed form.
  constexpr std::size_t kOrder = 200;
  std::vector<double> p(kOrder + 1, 0.0);
  const double e3 = std::exp(-3.0);
  const double e11 = std::exp(-11.0);
  p[0] = 0.25 + 3.0 * e3 + 5.0 * e11;
  p[1] = 0.5;
  p[2] = 0.25 - 4.0 * e3 + 36.0 * e11;
  double pk = e11 * 512.0 / 6.0;
  for (std::size_t k = 3; k <= kOrder; ++k) {
    p[k] = pk;
    pk *= 8.0 / double(k + 1);
  }
  const std::vector<double> g = g_eps_coeffs(eps, kOrder + 1);

  auto admissible = [&](double c) {
    for (std::size_t k = 0; k <= kOrder; ++k)
      if (p[k] + c * g[k] < -1e-15) return false;
    return true;
  };
  double lo = 0.0, hi = 1.0;
  while (admissible(hi) && hi < 1e12) hi *= 2.0;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    (admissible(mid) ? lo : hi) = mid;
  }
  out.c3_max = lo;

  // I_eps by scan plus bisection of the sign changes of g_eps.
  constexpr std::size_t kScan = 200000;
  double first_neg = -1.0, last_neg = -1.0;
  for (std::size_t i = 0; i < kScan; ++i) {
    const double t = double(i) / double(kScan);
    if (g_eps_eval(eps, t) < 0.0) {
      if (first_neg < 0.0) first_neg = t;
      last_neg = t;
    }
  }
  if (first_neg >= 0.0) {
    out.interval_empty = false;
    auto bisect = [&](double a, double b) {
      // g(a) and g(b) have opposite signs.
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (a + b);
        if ((g_eps_eval(eps, a) < 0.0) == (g_eps_eval(eps, mid) < 0.0))
          a = mid;
        else
          b = mid;
      }
      return 0.5 * (a + b);
    };
    const double step = 1.0 / double(kScan);
    out.interval_lo =
        first_neg == 0.0 ? 0.0 : bisect(first_neg, first_neg - step);
    out.interval_hi = bisect(last_neg, last_neg + step);
    if (out.interval_lo > out.interval_hi)
      std::swap(out.interval_lo, out.interval_hi);
  }
  return out;
}

double exp_remainder_h(double x, unsigned r) {
  if (!(x > 0.0)) throw domain_error("exp_remainder_h: requires x > 0");
  if (r < 1) throw domain_error("exp_remainder_h: requires r >= 1");
  if (x < double(r)) {
    // Expansion of (1/(r-1)!) int_0^1 v^{r-1} e^{-x(1-v)} dv:
    // sum_{i>=0} (-x)^i / (r+i)!.
    double term = 1.0;
    for (unsigned j = 2; j <= r; ++j) term /= double(j);
    double acc = 0.0;
    for (unsigned i = 0; i < 400; ++i) {
      acc += term;
      term *= -x / double(r + i + 1);
      if (std::fabs(term) < 1e-20 * std::fabs(acc)) break;
    }
    return acc;
  }
  double partial = 0.0, xj = 1.0;
  for (unsigned j = 0; j < r; ++j) {
    partial += xj;
    xj *= -x / double(j + 1);
  }
  const double sign = (r % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(x, -double(r)) * (std::exp(-x) - partial);
}

double raw_moment(const OffspringLaw& law, unsigned j) {
  double acc = 0.0;
  for (std::size_t k = 0; k <= law.pmf_truncation(); ++k)
    acc += law.pmf(k) * std::pow(double(k), double(j));
  return acc;
}

double laplace_remainder_g(const OffspringLaw& law, unsigned r, double t) {
  if (!(t > 0.0)) throw domain_error("laplace_remainder_g: requires t > 0");
  if (r < 1) throw domain_error("laplace_remainder_g: requires r >= 1");
  const double f = law.pgf(cplx{std::exp(-t)}).real();
  double partial = 0.0, tj = 1.0;
  for (unsigned j = 0; j < r; ++j) {
    partial += raw_moment(law, j) * tj;
    tj *= -t / double(j + 1);
  }
  double rfac = 1.0;
  for (unsigned j = 2; j <= r; ++j) rfac *= double(j);
  const double sign = (r % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(t, -double(r)) * rfac * (f - partial);
}

}  // namespace gwm
