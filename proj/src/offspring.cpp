#include "gwm/offspring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gwm {

namespace {

constexpr double kTailTarget = 1e-15;

// 1 - (1-s)^j without cancellation for small s.
double one_minus_pow(unsigned j, double s) {
  if (j == 0) return 0.0;
  if (s >= 0.5) return 1.0 - std::pow(1.0 - s, double(j));
  return -std::expm1(double(j) * std::log1p(-s));
}

// sum_{k>=2} x^k / k  (for |x| <= 0.6).
double log_series_tail(double x) {
  double term = x * x;
  double acc = 0.0;
  for (int k = 2; k < 200; ++k) {
    acc += term / k;
    term *= x;
    if (std::fabs(term) < 1e-19 * (std::fabs(acc) + 1e-300)) break;
  }
  return acc;
}

// expm1(w) - w = sum_{k>=2} w^k / k!  (for |w| <= 0.7).
double expm1_minus_w(double w) {
  double term = w * w / 2.0;
  double acc = 0.0;
  for (int k = 2; k < 60; ++k) {
    acc += term;
    term *= w / (k + 1);
    if (std::fabs(term) < 1e-19 * (std::fabs(acc) + 1e-300)) break;
  }
  return acc;
}

// Gap of a two-point law {0: 1-1/m, m: 1/m}: (1/m)(m s + expm1(m log(1-s))).
double two_point_gap(unsigned m, double s) {
  const double ms = double(m) * s;
  if (ms > 0.5) {
    return (ms + std::expm1(double(m) * std::log1p(-s))) / double(m);
  }
  // m log(1-s) = -(m s + m f2) with f2 = sum_{k>=2} s^k/k.
  const double f2 = log_series_tail(s);
  const double w = -(ms + double(m) * f2);
  return (-double(m) * f2 + expm1_minus_w(w)) / double(m);
}

unsigned support_gcd(const std::vector<double>& pmf) {
  unsigned g = 0;
  long first = -1;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    if (pmf[k] > 1e-13) {
      if (first < 0)
        first = long(k);
      else
        g = std::gcd(g, unsigned(long(k) - first));
    }
  }
  return g == 0 ? 1 : g;
}

}  // namespace

std::vector<double> g_eps_coeffs(double eps, std::size_t count) {
  // g = 1/2 - [cos(a) cos(bt) - sin(a) sin(bt)]/2 - eps (1-t)^3,
  // a = 8 pi / 5, b = 12 pi / 5.
  const double a = 8.0 * kPi / 5.0;
  const double b = 12.0 * kPi / 5.0;
  const double ca = std::cos(a);
  const double sa = std::sin(a);
  std::vector<double> g(count, 0.0);
  double bpow = 1.0;  // b^j / j!
  for (std::size_t j = 0; j < count; ++j) {
    double cosco;  // coefficient of t^j in cos(a + b t)
    switch (j % 4) {
      case 0: cosco = ca * bpow; break;
      case 1: cosco = -sa * bpow; break;
      case 2: cosco = -ca * bpow; break;
      default: cosco = sa * bpow; break;
    }
    g[j] = -0.5 * cosco;
    bpow *= b / double(j + 1);
  }
  g[0] += 0.5;
  static constexpr double cube[4] = {1.0, -3.0, 3.0, -1.0};
  for (std::size_t j = 0; j < std::min<std::size_t>(4, count); ++j)
    g[j] -= eps * cube[j];
  return g;
}

double g_eps_eval(double eps, double t) {
  const double th = 4.0 * kPi * (0.6 * t + 0.4);
  const double omt = 1.0 - t;
  return 0.5 * (1.0 - std::cos(th)) - eps * omt * omt * omt;
}

void OffspringLaw::validate() const {
  double sum = 0.0, mean = 0.0, var = 0.0;
  for (std::size_t k = 0; k < pmf_.size(); ++k) {
    if (pmf_[k] < -1e-13) {
      std::ostringstream os;
      os << name_ << ": invariant violated: pmf[" << k << "] = " << pmf_[k]
         << " < 0";
      throw validation_error(os.str());
    }
    sum += pmf_[k];
    mean += double(k) * pmf_[k];
    var += double(k) * double(k - 1.0) * pmf_[k];
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw validation_error(name_ + ": invariant violated: pmf sum " +
                           std::to_string(sum) + " != 1");
  if (std::fabs(mean - 1.0) > 1e-12)
    throw validation_error(name_ + ": invariant violated: criticality, mean " +
                           std::to_string(mean) + " != 1");
  if (!(pmf_[0] > 0.0))
    throw validation_error(name_ + ": invariant violated: p_0 = 0");
  bool branching = false;
  for (std::size_t k = 2; k < pmf_.size(); ++k)
    if (pmf_[k] > 0.0) branching = true;
  if (!branching)
    throw validation_error(name_ +
                           ": invariant violated: no p_k > 0 with k >= 2");
  // var above is E[xi(xi-1)] = Var xi for a mean-1 law.
  if (std::fabs(var - variance_) > 1e-10)
    throw validation_error(name_ + ": invariant violated: stored variance " +
                           std::to_string(variance_) +
                           " disagrees with pmf value " + std::to_string(var));
  if (!(variance_ > 0.0))
    throw validation_error(name_ + ": invariant violated: variance <= 0");
}

void OffspringLaw::finish(std::string name) {
  name_ = std::move(name);
  span_ = support_gcd(pmf_);
  validate();
}

OffspringLaw OffspringLaw::mary(unsigned m) {
  if (m < 2) throw validation_error("mary: requires m >= 2");
  OffspringLaw law;
  law.family_ = Family::kMAry;
  law.m_ = m;
  // Bi(m, 1/m), computed by the stable ratio recurrence.
  std::vector<double> p;
  double pk = std::exp(double(m) * std::log1p(-1.0 / double(m)));  // p_0
  for (unsigned k = 0; k <= m; ++k) {
    p.push_back(pk);
    if (k < m) pk *= double(m - k) / (double(k + 1) * double(m - 1));
    if (k > 8 && pk < 1e-18) break;  // tail below target, keep table small
  }
  law.pmf_ = std::move(p);
  law.variance_ = 1.0 - 1.0 / double(m);
  law.third_factorial_ = (1.0 - 1.0 / m) * (1.0 - 2.0 / m);
  law.finish(m == 2 ? "binary" : "mary:" + std::to_string(m));
  return law;
}

OffspringLaw OffspringLaw::poisson() {
  OffspringLaw law;
  law.family_ = Family::kPoisson;
  std::vector<double> p;
  double pk = std::exp(-1.0);
  for (unsigned k = 0;; ++k) {
    p.push_back(pk);
    pk /= double(k + 1);
    if (k > 4 && pk < 1e-19) break;
  }
  law.pmf_ = std::move(p);
  law.variance_ = 1.0;
  law.third_factorial_ = 1.0;
  law.finish("poisson");
  return law;
}

OffspringLaw OffspringLaw::full_mary(unsigned m) {
  if (m < 2) throw validation_error("fullmary: requires m >= 2");
  OffspringLaw law;
  law.family_ = Family::kFullMAry;
  law.m_ = m;
  if (m > 2'000'000)
    throw validation_error("fullmary: m capped at 2e6 (dense pmf table)");
  law.pmf_.assign(m + 1, 0.0);
  law.pmf_[0] = 1.0 - 1.0 / double(m);
  law.pmf_[m] = 1.0 / double(m);
  law.variance_ = double(m) - 1.0;
  law.third_factorial_ = double(m - 1.0) * double(m - 2.0);
  law.finish(m == 2 ? "fullbinary" : "fullmary:" + std::to_string(m));
  return law;
}

OffspringLaw OffspringLaw::geometric() {
  OffspringLaw law;
  law.family_ = Family::kGeometric;
  std::vector<double> p;
  double pk = 0.5;
  for (unsigned k = 0; k <= 60; ++k) {
    p.push_back(pk);
    pk *= 0.5;
  }
  law.pmf_ = std::move(p);
  law.variance_ = 2.0;
  law.third_factorial_ = 6.0;
  law.finish("geometric");
  return law;
}

OffspringLaw OffspringLaw::c_family(double c) {
  if (!(c > 1e-9) || c > 1.0)
    throw validation_error(
        "cfam: requires 1e-9 < c <= 1 (variance bounded away from 0)");
  OffspringLaw law;
  law.family_ = Family::kCFamily;
  law.c_ = c;
  law.pmf_ = {0.5 * c, 1.0 - c, 0.5 * c};
  law.variance_ = c;
  law.third_factorial_ = 0.0;
  std::ostringstream os;
  os << "cfam:" << c;
  law.finish(os.str());
  return law;
}

OffspringLaw OffspringLaw::mixture(double lambda, unsigned m) {
  if (lambda < 0.0 || lambda > 1.0)
    throw validation_error("mix: requires lambda in [0, 1]");
  if (m < 3) throw validation_error("mix: requires m >= 3");
  OffspringLaw law;
  law.family_ = Family::kMixture;
  law.lambda_ = lambda;
  law.m_ = m;
  law.pmf_.assign(m + 1, 0.0);
  law.pmf_[0] = lambda * (1.0 - 1.0 / double(m)) + (1.0 - lambda) * 0.5;
  law.pmf_[2] += (1.0 - lambda) * 0.5;
  law.pmf_[m] += lambda / double(m);
  law.variance_ = lambda * (double(m) - 1.0) + (1.0 - lambda);
  law.third_factorial_ = lambda * double(m - 1.0) * double(m - 2.0);
  std::ostringstream os;
  os << "mix:" << lambda << ":" << m;
  law.finish(os.str());
  return law;
}

namespace {

std::vector<double> appendix_a_pmf() {
  const double e3 = std::exp(-3.0);
  const double e11 = std::exp(-11.0);
  std::vector<double> p;
  p.push_back(0.25 + 3.0 * e3 + 5.0 * e11);
  p.push_back(0.5);
  p.push_back(0.25 - 4.0 * e3 + 36.0 * e11);
  double pk = e11 * 512.0 / 6.0;  // k = 3
  for (unsigned k = 3;; ++k) {
    p.push_back(pk);
    pk *= 8.0 / double(k + 1);
    if (k > 12 && pk < 1e-19) break;
  }
  return p;
}

}  // namespace

OffspringLaw OffspringLaw::appendix_a() {
  OffspringLaw law;
  law.family_ = Family::kAppendixA;
  law.pmf_ = appendix_a_pmf();
  law.variance_ = 0.5 + 56.0 * std::exp(-3.0) + 8.0 * std::exp(-11.0);
  law.third_factorial_ = 512.0 * std::exp(-3.0);
  law.finish("appxa");
  return law;
}

OffspringLaw OffspringLaw::appendix_a_perturbed(double eps, double c3) {
  if (eps < 0.0 || eps > 1.0)
    throw validation_error("appxa perturbed: requires eps in [0, 1]");
  if (c3 < 0.0) throw validation_error("appxa perturbed: requires c3 >= 0");
  OffspringLaw law;
  law.family_ = Family::kAppendixAPerturbed;
  law.eps_ = eps;
  law.c3_ = c3;
  std::vector<double> base = appendix_a_pmf();
  const std::size_t count = std::max<std::size_t>(base.size(), 64);
  std::vector<double> g = g_eps_coeffs(eps, count);
  base.resize(count, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    base[k] += c3 * g[k];
    if (base[k] < -1e-13) {
      std::ostringstream os;
      os << "appxa perturbed: coefficient " << k << " of the perturbed pgf is "
         << base[k] << "; c3 too large for nonnegativity";
      throw validation_error(os.str());
    }
  }
  law.pmf_ = std::move(base);
  const double b = 12.0 * kPi / 5.0;
  law.variance_ =
      0.5 + 56.0 * std::exp(-3.0) + 8.0 * std::exp(-11.0) + c3 * 0.5 * b * b;
  law.third_factorial_ = 512.0 * std::exp(-3.0) + c3 * 6.0 * eps;
  std::ostringstream os;
  os << "appxa:" << eps << ":" << c3;
  law.finish(os.str());
  return law;
}

OffspringLaw OffspringLaw::custom(const std::vector<double>& pmf) {
  OffspringLaw law;
  law.family_ = Family::kCustom;
  law.pmf_ = pmf;
  double var = 0.0, third = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    var += double(k) * double(k - 1.0) * pmf[k];
    third += double(k) * double(k - 1.0) * double(k - 2.0) * pmf[k];
  }
  law.variance_ = var;
  law.third_factorial_ = third;
  law.finish("custom");
  return law;
}

cplx OffspringLaw::pgf(cplx t) const {
  if (std::abs(t) > 1.0 + 1e-12)
    throw domain_error("pgf: requires |t| <= 1");
  switch (family_) {
    case Family::kMAry:
      return std::pow(1.0 - (1.0 - t) / double(m_), double(m_));
    case Family::kPoisson:
      return std::exp(t - 1.0);
    case Family::kFullMAry:
      return (double(m_) - 1.0 + std::pow(t, double(m_))) / double(m_);
    case Family::kGeometric:
      return 1.0 / (2.0 - t);
    case Family::kCFamily:
      return t + 0.5 * c_ * (1.0 - t) * (1.0 - t);
    case Family::kMixture: {
      const cplx f5 =
          (double(m_) - 1.0 + std::pow(t, double(m_))) / double(m_);
      const cplx f3 = 0.5 * (1.0 + t * t);
      return lambda_ * f5 + (1.0 - lambda_) * f3;
    }
    case Family::kAppendixA:
    case Family::kAppendixAPerturbed: {
      const double e3 = std::exp(-3.0);
      const double e11 = std::exp(-11.0);
      cplx v = 0.25 + 3.0 * e3 + 5.0 * e11 + 0.5 * t +
               (0.25 - 4.0 * e3 + 36.0 * e11) * t * t +
               e11 * (std::exp(8.0 * t) - 1.0 - 8.0 * t - 32.0 * t * t);
      if (family_ == Family::kAppendixAPerturbed) {
        // g_eps extended to complex t through the same entire expression.
        const cplx th = 4.0 * kPi * (0.6 * t + 0.4);
        const cplx omt = 1.0 - t;
        v += c3_ * (0.5 * (1.0 - std::cos(th)) - eps_ * omt * omt * omt);
      }
      return v;
    }
    case Family::kCustom: {
      cplx acc{};
      cplx tp = 1.0;
      for (double pk : pmf_) {
        acc += pk * tp;
        tp *= t;
      }
      return acc;
    }
  }
  throw error("pgf: unreachable");
}

cplx OffspringLaw::pgf_derivative(unsigned m, cplx t) const {
  if (m == 0) return pgf(t);
  if (std::abs(t) > 1.0 + 1e-12)
    throw domain_error("pgf_derivative: requires |t| <= 1");
  switch (family_) {
    case Family::kMAry: {
      if (m > m_) return cplx{};
      double fac = 1.0;
      for (unsigned j = 0; j < m; ++j) fac *= double(m_ - j) / double(m_);
      return fac * std::pow(1.0 - (1.0 - t) / double(m_), double(m_ - m));
    }
    case Family::kPoisson:
      return std::exp(t - 1.0);
    case Family::kFullMAry: {
      if (m > m_) return cplx{};
      double fac = 1.0 / double(m_);
      for (unsigned j = 0; j < m; ++j) fac *= double(m_ - j);
      return fac * std::pow(t, double(m_ - m));
    }
    case Family::kGeometric: {
      double fac = 1.0;
      for (unsigned j = 1; j <= m; ++j) fac *= double(j);
      return fac * std::pow(2.0 - t, -double(m + 1));
    }
    case Family::kCFamily:
      if (m == 1) return 1.0 - c_ * (1.0 - t);
      if (m == 2) return cplx{c_};
      return cplx{};
    case Family::kMixture: {
      cplx f5{};
      if (m <= m_) {
        double fac = 1.0 / double(m_);
        for (unsigned j = 0; j < m; ++j) fac *= double(m_ - j);
        f5 = fac * std::pow(t, double(m_ - m));
      }
      cplx f3{};
      if (m == 1) f3 = t;
      if (m == 2) f3 = 1.0;
      return lambda_ * f5 + (1.0 - lambda_) * f3;
    }
    case Family::kAppendixA:
    case Family::kAppendixAPerturbed: {
      const double e3 = std::exp(-3.0);
      const double e11 = std::exp(-11.0);
      cplx v = e11 * std::pow(8.0, double(m)) * std::exp(8.0 * t);
      if (m == 1)
        v += 0.5 + 2.0 * (0.25 - 4.0 * e3 + 36.0 * e11) * t +
             e11 * (-8.0 - 64.0 * t);
      else if (m == 2)
        v += 2.0 * (0.25 - 4.0 * e3 + 36.0 * e11) - 64.0 * e11;
      if (family_ == Family::kAppendixAPerturbed) {
        const double b = 12.0 * kPi / 5.0;
        const cplx th = 4.0 * kPi * (0.6 * t + 0.4) + double(m) * kPi / 2.0;
        cplx g = -0.5 * std::pow(b, double(m)) * std::cos(th);
        const cplx omt = 1.0 - t;
        if (m == 1) g += eps_ * 3.0 * omt * omt;
        if (m == 2) g += -eps_ * 6.0 * omt;
        if (m == 3) g += cplx{eps_ * 6.0};
        v += c3_ * g;
      }
      return v;
    }
    case Family::kCustom: {
      // Finite sum over the stored support; terms are checked for decay so
      // that a truncated infinite tail can never be silently dropped.
      cplx acc{};
      cplx last{};
      for (std::size_t k = m; k < pmf_.size(); ++k) {
        double fac = pmf_[k];
        for (unsigned j = 0; j < m; ++j) fac *= double(k - j);
        last = fac * std::pow(t, double(k - m));
        acc += last;
      }
      if (pmf_.size() > 32 && std::abs(last) > 1e-14 * (1.0 + std::abs(acc)))
        throw error(
            "pgf_derivative: truncated-sum tail has not converged "
            "(possible divergence)");
      return acc;
    }
  }
  throw error("pgf_derivative: unreachable");
}

double OffspringLaw::pgf_gap_from_s(double s) const {
  if (s < 0.0 || s > 1.0)
    throw domain_error("pgf_gap: requires 0 <= 1-t <= 1");
  switch (family_) {
    case Family::kGeometric:
      return s * s / (1.0 + s);
    case Family::kCFamily:
      return 0.5 * c_ * s * s;
    case Family::kFullMAry:
      return two_point_gap(m_, s);
    case Family::kMixture:
      return lambda_ * two_point_gap(m_, s) + (1.0 - lambda_) * 0.5 * s * s;
    default: {
      // Positive-term identity for any critical law:
      // Phi(t) - t = sum_k p_k (1-t) sum_{j<k} (1 - t^j).
      const std::size_t kmax = pmf_.size();
      double prefix = 0.0;  // sum_{j<k} (1 - t^j)
      double acc = 0.0;
      for (std::size_t k = 1; k < kmax; ++k) {
        prefix += one_minus_pow(unsigned(k) - 1, s);
        acc += pmf_[k] * prefix;
      }
      return s * acc;
    }
  }
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw validation_error("law descriptor: bad " + what + " '" + s + "'");
  }
}

unsigned parse_unsigned(const std::string& s, const std::string& what) {
  const double v = parse_double(s, what);
  if (v < 0 || v != std::floor(v) || v > 4e9)
    throw validation_error("law descriptor: bad " + what + " '" + s + "'");
  return unsigned(v);
}

}  // namespace

OffspringLaw make_law(const std::string& descriptor) {
  const std::vector<std::string> parts = split(descriptor, ':');
  const std::string& head = parts[0];
  const std::size_t nargs = parts.size() - 1;
  if (head == "binary" && nargs == 0) return OffspringLaw::binary();
  if (head == "mary" && nargs == 1)
    return OffspringLaw::mary(parse_unsigned(parts[1], "m"));
  if (head == "poisson" && nargs == 0) return OffspringLaw::poisson();
  if (head == "fullbinary" && nargs == 0) return OffspringLaw::full_binary();
  if (head == "fullmary" && nargs == 1)
    return OffspringLaw::full_mary(parse_unsigned(parts[1], "m"));
  if (head == "geometric" && nargs == 0) return OffspringLaw::geometric();
  if (head == "cfam" && nargs == 1)
    return OffspringLaw::c_family(parse_double(parts[1], "c"));
  if (head == "mix" && nargs == 2)
    return OffspringLaw::mixture(parse_double(parts[1], "lambda"),
                                 parse_unsigned(parts[2], "m"));
  if (head == "appxa" && nargs == 0) return OffspringLaw::appendix_a();
  if (head == "appxa" && nargs == 2)
    return OffspringLaw::appendix_a_perturbed(parse_double(parts[1], "eps"),
                                              parse_double(parts[2], "c3"));
  if (head == "custom" && nargs == 1) {
    std::vector<double> pmf;
    for (const std::string& tok : split(parts[1], ','))
      pmf.push_back(parse_double(tok, "pmf entry"));
    return OffspringLaw::custom(pmf);
  }
  throw validation_error("unknown law descriptor '" + descriptor + "'");
}

}  // namespace gwm
