#include "gwm/treesize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gwm {

namespace {

// q for Poisson offspring through P = Phi(y) = exp(y - 1), which satisfies
// P' = y' P; then q_n = P_{n-1}.
std::vector<double> q_poisson(std::size_t n_max) {
  std::vector<double> q(n_max + 1, 0.0), p(n_max, 0.0);
  p[0] = std::exp(-1.0);
  if (n_max >= 1) q[1] = p[0];
  for (std::size_t k = 1; k + 1 <= n_max; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += double(j) * q[j] * p[k - j];
    p[k] = acc / double(k);
    q[k + 1] = p[k];
  }
  return q;
}

// q for Ge(1/2) offspring through P = Phi(y) = 1/(2 - y): P (2 - y) = 1.
std::vector<double> q_geometric(std::size_t n_max) {
  std::vector<double> q(n_max + 1, 0.0), p(n_max, 0.0);
  p[0] = 0.5;
  if (n_max >= 1) q[1] = p[0];
  for (std::size_t k = 1; k + 1 <= n_max; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += q[j] * p[k - j];
    p[k] = acc / 2.0;
    q[k + 1] = p[k];
  }
  return q;
}

// q for a two-point support {0, m}: in the compressed variable w = z^m the
// generating function G(w) = sum_j q_{jm+1} w^j satisfies
// G = p0 + p_m w G^m; G^m is maintained by the J.C.P. Miller recurrence.
std::vector<double> q_two_point(double p0, double pm, unsigned m,
                                std::size_t n_max) {
  const std::size_t jmax = n_max >= 1 ? (n_max - 1) / m : 0;
  std::vector<double> g(jmax + 1, 0.0), h(jmax + 1, 0.0);
  g[0] = p0;
  h[0] = std::pow(p0, double(m));
  for (std::size_t j = 1; j <= jmax; ++j) {
    g[j] = pm * h[j - 1];
    double acc = 0.0;
    for (std::size_t i = 1; i <= j; ++i)
      acc += (double(m + 1) * double(i) - double(j)) * g[i] * h[j - i];
    h[j] = acc / (double(j) * p0);
  }
  std::vector<double> q(n_max + 1, 0.0);
  for (std::size_t j = 0; j <= jmax; ++j) q[j * m + 1] = g[j];
  return q;
}

// Generic path: yh = y/z has nonzero constant term q_1 = p0, and each
// support power yh^k is extended index-by-index with the Miller recurrence,
// so the cost is O(S N^2) with S the support size.
std::vector<double> q_generic(const OffspringLaw& law, std::size_t n_max) {
  std::vector<std::size_t> support;
  for (std::size_t k = 1; k <= law.pmf_truncation(); ++k)
    if (law.pmf(k) != 0.0) support.push_back(k);

  std::vector<double> q(n_max + 1, 0.0);
  const double p0 = law.pmf(0);
  if (n_max >= 1) q[1] = p0;
  std::vector<double> yh(n_max, 0.0);  // yh[j] = q_{j+1}
  yh[0] = p0;
  // pw[s][j] = [w^j] yh^{k_s}
  std::vector<std::vector<double>> pw(support.size());
  for (auto& v : pw) v.assign(n_max, 0.0);
  for (std::size_t s = 0; s < support.size(); ++s)
    pw[s][0] = std::pow(p0, double(support[s]));

  for (std::size_t n = 2; n <= n_max; ++n) {
    // Extend each power table to index n-1-k and read off the coefficient.
    double qn = 0.0;
    for (std::size_t s = 0; s < support.size(); ++s) {
      const std::size_t k = support[s];
      if (n - 1 < k) break;  // support sorted ascending
      const std::size_t j = n - 1 - k;
      if (j >= 1) {
        double acc = 0.0;
        for (std::size_t i = 1; i <= j; ++i)
          acc += (double(k + 1) * double(i) - double(j)) * yh[i] * pw[s][j - i];
        pw[s][j] = acc / (double(j) * p0);
      }
      qn += law.pmf(k) * pw[s][j];
    }
    q[n] = qn;
    yh[n - 1] = qn;
  }
  return q;
}

}  // namespace

TreeSizeLaw::TreeSizeLaw(OffspringLaw law, std::size_t truncation)
    : law_(std::move(law)) {
  if (truncation < 1) throw domain_error("TreeSizeLaw: requires N >= 1");
  switch (law_.family()) {
    case OffspringLaw::Family::kPoisson:
      q_ = q_poisson(truncation);
      break;
    case OffspringLaw::Family::kGeometric:
      q_ = q_geometric(truncation);
      break;
    case OffspringLaw::Family::kFullMAry:
      q_ = q_two_point(law_.pmf(0), law_.pmf(law_.m_param()), law_.m_param(),
                       truncation);
      break;
    default:
      q_ = q_generic(law_, truncation);
      break;
  }
  const double resid = fixed_point_residual(std::min<std::size_t>(
      truncation, 512));
  if (resid > 1e-12)
    throw validation_error("TreeSizeLaw: fixed-point residual " +
                           std::to_string(resid) + " exceeds 1e-12");
}

TruncatedSeries TreeSizeLaw::series() const {
  TruncatedSeries s(truncation());
  for (std::size_t n = 0; n < q_.size(); ++n) s[n] = q_[n];
  return s;
}

double TreeSizeLaw::asymptotic_ratio(std::size_t n) const {
  if (!attainable(n)) {
    std::ostringstream os;
    os << "asymptotic_ratio: n = " << n << " is not attainable (span "
       << law_.span() << " requires n == 1 mod span)";
    throw domain_error(os.str());
  }
  if (n > truncation())
    throw domain_error("asymptotic_ratio: n exceeds truncation");
  const double sigma = std::sqrt(law_.variance());
  return q_[n] * std::sqrt(2.0 * kPi) * sigma * std::pow(double(n), 1.5) /
         double(law_.span());
}

double TreeSizeLaw::fixed_point_residual(std::size_t upto) const {
  upto = std::min(upto, truncation());
  // Independent composition z Phi(y) by Horner over the support when that is
  // affordable; for a huge sparse two-point support, by repeated squaring.
  TruncatedSeries y(upto);
  for (std::size_t n = 0; n <= upto; ++n) y[n] = q_[n];

  TruncatedSeries comp(upto);
  if (law_.family() == OffspringLaw::Family::kFullMAry &&
      law_.m_param() > 64) {
    const unsigned m = law_.m_param();
    TruncatedSeries pw = TruncatedSeries::one(upto);
    TruncatedSeries base = y;
    unsigned e = m;
    while (e > 0) {
      if (e & 1u) pw = mul(pw, base);
      e >>= 1u;
      if (e) base = mul(base, base);
    }
    comp = add(scale(TruncatedSeries::one(upto), law_.pmf(0)),
               scale(pw, law_.pmf(m)));
  } else {
    const std::size_t kmax = law_.pmf_truncation();
    comp = TruncatedSeries(upto);
    comp[0] = law_.pmf(kmax);
    for (std::size_t k = kmax; k-- > 0;) {
      comp = mul(comp, y);
      comp[0] += law_.pmf(k);
    }
  }
  double worst = 0.0;
  for (std::size_t n = 1; n <= upto; ++n) {
    const double ref = n == 1 ? law_.pmf(0) : comp[n - 1].real();
    worst = std::max(worst, std::fabs(q_[n] - ref));
  }
  return worst;
}

TreeSizeLaw::TailModel TreeSizeLaw::tail_model() const {
  const std::size_t N = truncation();
  const unsigned h = law_.span();
  auto attain_at_most = [&](std::size_t n) {
    return n - (n - 1) % h;
  };
  const std::size_t n1 = attain_at_most(N);
  const std::size_t n2 = attain_at_most(std::max<std::size_t>(3 * N / 4, 3));
  const std::size_t n3 = attain_at_most(std::max<std::size_t>(N / 2, 2));
  if (n3 <= 1 || n2 <= n3 || n1 <= n2)
    throw domain_error("tail_model: truncation too small to fit");
  // Solve the 3x3 Vandermonde system in 1/n for q_n n^(3/2).
  const double x1 = 1.0 / double(n1), x2 = 1.0 / double(n2),
               x3 = 1.0 / double(n3);
  const double f1 = q_[n1] * std::pow(double(n1), 1.5);
  const double f2 = q_[n2] * std::pow(double(n2), 1.5);
  const double f3 = q_[n3] * std::pow(double(n3), 1.5);
  // Divided differences.
  const double d12 = (f2 - f1) / (x2 - x1);
  const double d23 = (f3 - f2) / (x3 - x2);
  const double d123 = (d23 - d12) / (x3 - x1);
  const double c2 = d123;
  const double c1 = d12 - c2 * (x1 + x2);
  const double c0 = f1 - c1 * x1 - c2 * x1 * x1;
  return TailModel{c0, c1, c2, n1};
}

cplx TreeSizeLaw::tail_sum_power(cplx alpha, double shift) const {
  if (alpha.real() >= 0.5)
    throw domain_error("tail_sum_power: divergent tail exponent");
  const TailModel tm = tail_model();
  const std::size_t N = truncation();
  const unsigned h = law_.span();
  std::size_t n = N + 1;
  while (!attainable(n)) ++n;
  const std::size_t direct_cap = std::max<std::size_t>(64 * N, 1u << 20);
  cplx acc{};
  for (; n <= direct_cap; n += h) {
    const double nn = double(n);
    const double model =
        std::pow(nn, -1.5) * (tm.c0 + tm.c1 / nn + tm.c2 / (nn * nn));
    acc += model * std::exp(alpha * std::log(nn + shift));
  }
  // Remainder by the midpoint rule on each model power; the shift is
  // negligible relative to n out here.
  const double m0 = double(n) - 0.5 * double(h);
  for (int j = 0; j < 3; ++j) {
    const cplx beta = alpha - 1.5 - double(j);
    const double cj = (j == 0 ? tm.c0 : j == 1 ? tm.c1 : tm.c2);
    acc += cj / double(h) * std::exp((beta + 1.0) * std::log(m0)) /
           (-beta - 1.0);
  }
  return acc;
}

double TreeSizeLaw::tail_sum_log() const {
  const TailModel tm = tail_model();
  const std::size_t N = truncation();
  const unsigned h = law_.span();
  std::size_t n = N + 1;
  while (!attainable(n)) ++n;
  const std::size_t direct_cap = std::max<std::size_t>(64 * N, 1u << 20);
  double acc = 0.0;
  for (; n <= direct_cap; n += h) {
    const double nn = double(n);
    const double model =
        std::pow(nn, -1.5) * (tm.c0 + tm.c1 / nn + tm.c2 / (nn * nn));
    acc += model * std::log(nn);
  }
  // int_M^inf x^beta log x dx = M^{beta+1} [log M/(-beta-1) + 1/(beta+1)^2].
  const double m0 = double(n) - 0.5 * double(h);
  for (int j = 0; j < 3; ++j) {
    const double beta = -1.5 - double(j);
    const double cj = (j == 0 ? tm.c0 : j == 1 ? tm.c1 : tm.c2);
    acc += cj / double(h) * std::pow(m0, beta + 1.0) *
           (std::log(m0) / (-beta - 1.0) + 1.0 / ((beta + 1.0) * (beta + 1.0)));
  }
  return acc;
}

double y_eval(const OffspringLaw& law, double t) {
  if (t < 0.0 || t > 1.0) throw domain_error("y_eval: requires t in [0, 1]");
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;
  double w = 0.0;
  for (long it = 0; it < 20'000'000; ++it) {
    const double nw = t * (w + law.pgf_gap(w));  // t Phi(w)
    if (nw - w < 1e-14) return nw;
    w = nw;
  }
  return w;
}

double r_eval(const OffspringLaw& law, double eta) {
  if (!(eta > 0.0) || eta > 1.0)
    throw domain_error("r_eval: requires eta in (0, 1]");
  return 1.0 + law.pgf_gap(eta) / eta;
}

double log_r_eval(const OffspringLaw& law, double eta) {
  if (!(eta > 0.0) || eta > 1.0)
    throw domain_error("log_r_eval: requires eta in (0, 1]");
  const double g = law.pgf_gap(eta) / eta;
  if (g < 0.5) return std::log1p(g);
  return std::log(law.pgf_gap(eta) + eta) - std::log(eta);
}

}  // namespace gwm
