#include <doctest.h>

#include <cmath>

#include "gwm/limits.hpp"
#include "gwm/moments.hpp"
#include "gwm/rng.hpp"

using namespace gwm;

TEST_CASE("enumeration oracle on trees that can be checked by hand") {
  const OffspringLaw fb = OffspringLaw::full_binary();
  for (cplx alpha : {cplx{0.7}, cplx{0.0, 1.0}, cplx{1.0}}) {
    const cplx got = enumerate_moment(fb, 3, {TollSequence::power(alpha)});
    const cplx expect = 2.0 + std::exp(alpha * std::log(3.0));
    CHECK(std::abs(got - expect) < 1e-13);
  }

  // Ordered trees of size 3: the path and the cherry, each with conditional
  // probability 1/2 (path weight p1^2 p0 = cherry weight p2 p0^2 = 1/32).
  const OffspringLaw geo = OffspringLaw::geometric();
  const cplx mean3 =
      enumerate_moment(geo, 3, {TollSequence::power(cplx{-1.0})});
  // E X_3(alpha) = 3/2 + 2^alpha/2 + 3^alpha at alpha = -1.
  CHECK(mean3.real() == doctest::Approx(1.5 + 0.25 + 1.0 / 3).epsilon(1e-13));

  // A single node: the functional equals b_1.
  CHECK(std::abs(enumerate_moment(geo, 1, {TollSequence::log_size()})) <
        1e-15);
  const cplx b1 = enumerate_moment(geo, 1, {TollSequence::power(cplx{2.0})});
  CHECK(b1.real() == doctest::Approx(1.0));

  CHECK_THROWS_AS(enumerate_moment(geo, 10, {TollSequence::log_size()}),
                  guard_error);
}

TEST_CASE("empty toll multiset gives E[1] = 1 and M = y") {
  MomentEngine eng(OffspringLaw::binary(), 16);
  CHECK(eng.conditional_moment(5, {}) == cplx{1.0});
  const TruncatedSeries m = eng.moment_series({});
  CHECK(m[3].real() == doctest::Approx(5.0 / 64));
}

TEST_CASE("derivative ladder evaluates Phi^(m) along y") {
  for (const char* d : {"binary", "poisson"}) {
    const OffspringLaw law = make_law(d);
    MomentEngine eng(law, 512);
    for (unsigned m = 0; m <= 3; ++m) {
      const TruncatedSeries& s = eng.phi_m_of_y(m);
      for (double t : {0.3, 0.6, 0.9}) {
        cplx val{};
        double tp = 1.0;
        for (std::size_t n = 0; n <= s.truncation(); ++n) {
          val += s[n] * tp;
          tp *= t;
        }
        const double eta = y_eval(law, t);
        const cplx direct = law.pgf_derivative(m, cplx{eta});
        CHECK(std::abs(val - direct) < 1e-9);
      }
    }
    // Constant term of the ladder base is Phi(0) = p_0.
    CHECK(eng.phi_m_of_y(0)[0].real() == doctest::Approx(law.pmf(0)));
  }
  // For the binary pgf the second derivative is identically sigma^2 = 1/2.
  MomentEngine bin(OffspringLaw::binary(), 64);
  const TruncatedSeries& ladder2 = bin.phi_m_of_y(2);
  CHECK(ladder2[0].real() == doctest::Approx(0.5).epsilon(1e-12));
  for (std::size_t n = 1; n <= 32; ++n) CHECK(std::abs(ladder2[n]) < 1e-12);
}

TEST_CASE("series route equals the enumeration oracle") {
  const std::vector<std::vector<TollSequence>> multisets = {
      {TollSequence::log_size()},
      {TollSequence::power(cplx{-1.0}), TollSequence::log_size()},
      {TollSequence::power(cplx{0.0, 1.0}), TollSequence::power(cplx{0.0, -1.0}),
       TollSequence::log_size()},
      {TollSequence::power(cplx{0.3}), TollSequence::power(cplx{0.3})},
  };
  for (const char* d : {"binary", "poisson"}) {
    const OffspringLaw law = make_law(d);
    MomentEngine eng(law, 16);
    for (std::size_t n = 1; n <= 6; ++n) {
      for (const auto& tolls : multisets) {
        const cplx s = eng.conditional_moment(n, tolls);
        const cplx e = enumerate_moment(law, n, tolls);
        CHECK(std::abs(s - e) <= 1e-10 * (1.0 + std::abs(e)));
      }
    }
  }
}

TEST_CASE("conjugate-pair moments are real") {
  MomentEngine eng(OffspringLaw::poisson(), 128);
  const std::vector<TollSequence> pair = {
      TollSequence::power(cplx{0.0, 1.0}), TollSequence::power(cplx{0.0, -1.0})};
  for (std::size_t n : {4, 32, 100})
    CHECK(std::fabs(eng.conditional_moment(n, pair).imag()) <= 1e-10);
}

TEST_CASE("centered tolls drain the partial sums of q_n b_n") {
  const OffspringLaw law = OffspringLaw::poisson();
  TreeSizeLaw ts(law, 1024);
  for (cplx alpha : {cplx{-1.0}, cplx{0.3}}) {
    const cplx mu = mu_alpha(law, alpha);
    const TollSequence toll = TollSequence::centered_power(alpha, mu);
    auto partial = [&](std::size_t n_max) {
      cplx acc{};
      for (std::size_t n = 1; n <= n_max; ++n)
        acc += ts.q(n) * toll.eval(n);
      return std::abs(acc);
    };
    const double rate = std::max(alpha.real(), 0.0) - 0.5;
    const double c = partial(256) / std::pow(256.0, rate) * 1.25;
    CHECK(partial(1024) <= c * std::pow(1024.0, rate));
  }
}

TEST_CASE("coefficients are stable under doubling the truncation") {
  const std::vector<TollSequence> tolls = {TollSequence::log_size(),
                                           TollSequence::log_size()};
  MomentEngine small(OffspringLaw::poisson(), 64);
  MomentEngine big(OffspringLaw::poisson(), 128);
  const TruncatedSeries a = small.moment_series(tolls);
  const TruncatedSeries b = big.moment_series(tolls);
  for (std::size_t n = 0; n <= 64; ++n) CHECK(std::abs(a[n] - b[n]) <= 1e-13);
}

TEST_CASE("guards and unattainable sizes") {
  MomentEngine eng(OffspringLaw::full_binary(), 16);
  CHECK_THROWS_WITH_AS(eng.conditional_moment(2, {TollSequence::log_size()}),
                       doctest::Contains("unattainable"), domain_error);
  const std::vector<TollSequence> seven(7, TollSequence::log_size());
  CHECK_THROWS_AS(eng.moment_series(seven), guard_error);
}

TEST_CASE("moment tables agree across routes") {
  const OffspringLaw law = OffspringLaw::geometric();
  const std::vector<TollSequence> tolls = {TollSequence::power(cplx{-1.0})};
  const std::vector<std::size_t> sizes = {1, 2, 3, 5, 8};
  const MomentTable s = build_moment_table(MomentTable::Route::kSeries, law,
                                           tolls, sizes, 16);
  const MomentTable e = build_moment_table(MomentTable::Route::kEnumeration,
                                           law, tolls, sizes, 16);
  CHECK(s.route == MomentTable::Route::kSeries);
  CHECK(e.route == MomentTable::Route::kEnumeration);
  for (std::size_t n : sizes)
    CHECK(std::abs(s.values.at(n) - e.values.at(n)) < 1e-11);
}

TEST_CASE("the engine reproduces the documented size-3 means") {
  // For full binary trees X_3(alpha) is concentrated at 2 + 3^alpha;
  // for ordered trees E X_3(alpha) = 3/2 + 2^alpha / 2 + 3^alpha.
  MomentEngine fb(OffspringLaw::full_binary(), 8);
  MomentEngine geo(OffspringLaw::geometric(), 8);
  const cplx alpha{0.4, 0.2};
  const cplx p2 = std::exp(alpha * std::log(2.0));
  const cplx p3 = std::exp(alpha * std::log(3.0));
  CHECK(std::abs(fb.conditional_moment(3, {TollSequence::power(alpha)}) -
                 (2.0 + p3)) < 1e-12);
  CHECK(std::abs(geo.conditional_moment(3, {TollSequence::power(alpha)}) -
                 (1.5 + 0.5 * p2 + p3)) < 1e-12);
}

TEST_CASE("ladder boundary: Phi'(y) partial sums approach 1 near z = 1") {
  MomentEngine eng(OffspringLaw::poisson(), 2048);
  const TruncatedSeries& s = eng.phi_m_of_y(1);
  const double t = 0.999;
  cplx val{};
  double tp = 1.0;
  for (std::size_t n = 0; n <= s.truncation(); ++n) {
    val += s[n] * tp;
    tp *= t;
  }
  CHECK(std::abs(val - cplx{1.0}) < 0.1);
  CHECK(std::abs(val - cplx{1.0}) > 1e-4);  // not trivially 1
}

TEST_CASE("second moments scale to the limit variance constants") {
  // E|F|^2 / (n log n) approaches the limit variance with O(1/log n) error.
  const OffspringLaw law = OffspringLaw::poisson();
  MomentEngine eng(law, 4096);
  const double scale = 4096.0 * std::log(4096.0);

  const double mp = mu_prime(law);
  const TollSequence clog = TollSequence::centered_log(mp);
  const double shape2 = eng.conditional_moment(4096, {clog, clog}).real();
  CHECK(std::fabs(shape2 / scale / shape_variance_const(law) - 1.0) < 0.25);

  for (double t : {1.0, 2.0}) {
    const cplx alpha{0.0, t};
    const cplx mu = mu_alpha(law, alpha);
    const TollSequence f = TollSequence::centered_power(alpha, mu);
    const TollSequence fc =
        TollSequence::centered_power(std::conj(alpha), std::conj(mu));
    const double abs2 = eng.conditional_moment(4096, {f, fc}).real();
    CHECK(std::fabs(abs2 / scale / imag_variance(law, t) - 1.0) < 0.25);
  }
}

TEST_CASE("the recursion stays exact at the five- and six-toll boundary") {
  const OffspringLaw law = OffspringLaw::binary();
  MomentEngine eng(law, 8);
  for (std::size_t ell : {5, 6}) {
    const std::vector<TollSequence> tolls(ell, TollSequence::log_size());
    for (std::size_t n : {4, 6}) {
      const cplx s = eng.conditional_moment(n, tolls);
      const cplx e = enumerate_moment(law, n, tolls);
      CHECK(std::abs(s - e) <= 1e-10 * (1.0 + std::abs(e)));
    }
  }
}

TEST_CASE("route equivalence on randomly generated critical laws") {
  // Random finite pmfs with mean exactly 1 exercise law structures the named
  // families cannot (gaps in the support, lopsided masses).
  Philox rng(31415, 0);
  const std::vector<TollSequence> tolls = {
      TollSequence::power(cplx{-0.8, 0.4}), TollSequence::log_size()};
  int built = 0;
  while (built < 20) {
    // mean constraint: p1 + 2 p2 + 3 p3 + 4 p4 = 1 with all p >= 0.
    const double p2 = 0.45 * rng.next_double();
    const double p3 = 0.2 * rng.next_double();
    const double p4 = 0.1 * rng.next_double();
    const double p1 = 1.0 - 2.0 * p2 - 3.0 * p3 - 4.0 * p4;
    if (p1 < 0.0) continue;
    const double p0 = p2 + 2.0 * p3 + 3.0 * p4;  // sums to 1 given the mean
    if (!(p0 > 0.0) || !(p2 + p3 + p4 > 0.0)) continue;
    const OffspringLaw law = OffspringLaw::custom({p0, p1, p2, p3, p4});
    ++built;
    MomentEngine eng(law, 8);
    for (std::size_t n = 2; n <= 7; ++n) {
      const cplx s = eng.conditional_moment(n, tolls);
      const cplx e = enumerate_moment(law, n, tolls);
      CHECK(std::abs(s - e) <= 1e-10 * (1.0 + std::abs(e)));
    }
  }
}
