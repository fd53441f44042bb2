#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gwm/rng.hpp"
#include "gwm/series.hpp"
#include "gwm/treesize.hpp"

using namespace gwm;

namespace {

double dist(const TruncatedSeries& a, const TruncatedSeries& b) {
  double worst = 0.0;
  const std::size_t n = std::min(a.truncation(), b.truncation());
  for (std::size_t i = 0; i <= n; ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

TruncatedSeries random_series(Philox& rng, std::size_t n, bool invertible) {
  TruncatedSeries s(n);
  for (std::size_t i = 0; i <= n; ++i)
    s[i] = cplx{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
  if (invertible && std::abs(s[0]) < 0.5) s[0] += cplx{1.0, 0.0};
  return s;
}

}  // namespace

TEST_CASE("add and scale basics") {
  const auto z = TruncatedSeries::z(8);
  const auto two_z = add(z, z);
  CHECK(two_z[1] == cplx{2.0});
  CHECK(two_z[2] == cplx{});

  const auto L = polylog_coeffs(cplx{1.0}, 0, 16);
  CHECK(dist(scale(L, cplx{}), TruncatedSeries::zero(16)) == 0.0);

  const auto li0 = polylog_coeffs(cplx{}, 0, 16);
  CHECK(dist(add(li0, scale(li0, cplx{-1.0})), TruncatedSeries::zero(16)) ==
        0.0);
}

TEST_CASE("mul basics") {
  // 1/(1-z) times (1-z) is 1 up to truncation.
  TruncatedSeries geo(12), one_minus_z(12);
  for (std::size_t i = 0; i <= 12; ++i) geo[i] = 1.0;
  one_minus_z[0] = 1.0;
  one_minus_z[1] = -1.0;
  CHECK(dist(mul(geo, one_minus_z), TruncatedSeries::one(12)) == 0.0);

  const auto z = TruncatedSeries::z(8);
  const auto z2 = mul(z, z);
  CHECK(z2[2] == cplx{1.0});
  CHECK(z2[1] == cplx{});

  // Size-law square for the binary law: coefficient of z^2 is 2 q_1 q_2.
  TreeSizeLaw ts(OffspringLaw::binary(), 8);
  const auto y = ts.series();
  CHECK(mul(y, y)[2].real() == doctest::Approx(1.0 / 16).epsilon(1e-14));
}

TEST_CASE("hadamard matches the polylog identities") {
  const auto li1 = polylog_coeffs(cplx{1.0}, 0, 50);
  const auto li2 = polylog_coeffs(cplx{2.0}, 0, 50);
  CHECK(dist(hadamard(li1, li1), li2) < 1e-15);

  // Constant series (Hadamard) A picks out c * a_0.
  TruncatedSeries c(50), a(50);
  c[0] = cplx{3.0, 1.0};
  a[0] = cplx{2.0};
  a[3] = cplx{5.0};
  const auto prod = hadamard(c, a);
  CHECK(prod[0] == cplx{6.0, 2.0});
  for (std::size_t i = 1; i <= 50; ++i) CHECK(prod[i] == cplx{});

  const auto a1 = polylog_coeffs(cplx{0.5}, 1, 50);
  const auto b1 = polylog_coeffs(cplx{1.0}, 1, 50);
  const auto ab = polylog_coeffs(cplx{1.5}, 2, 50);
  CHECK(dist(hadamard(a1, b1), ab) < 1e-12);
}

TEST_CASE("divide and differentiate") {
  const auto z = TruncatedSeries::z(8);
  CHECK(dist(divide(mul(z, z), z), z.truncated(7)) == 0.0);

  // d/dz of -log(1-z) is 1/(1-z).
  const auto L = polylog_coeffs(cplx{1.0}, 0, 16);
  const auto dL = differentiate(L);
  CHECK(dL.truncation() == 15);
  for (std::size_t i = 0; i <= 15; ++i)
    CHECK(dL[i].real() == doctest::Approx(1.0).epsilon(1e-15));

  TreeSizeLaw ts(OffspringLaw::binary(), 8);
  CHECK(divide(ts.series(), TruncatedSeries::z(8))[0].real() ==
        doctest::Approx(0.25));

  CHECK_THROWS_AS(divide(TruncatedSeries::one(4), TruncatedSeries::zero(4)),
                  domain_error);
  // Dividend of lower leading order than divisor.
  CHECK_THROWS_AS(divide(TruncatedSeries::one(4), TruncatedSeries::z(4)),
                  domain_error);
}

TEST_CASE("polylog coefficient formulas") {
  const auto L = polylog_coeffs(cplx{1.0}, 0, 10);
  CHECK(L[0] == cplx{});
  for (std::size_t n = 1; n <= 10; ++n)
    CHECK(L[n].real() == doctest::Approx(1.0 / double(n)).epsilon(1e-15));

  const auto li0 = polylog_coeffs(cplx{}, 0, 10);
  for (std::size_t n = 1; n <= 10; ++n) CHECK(li0[n] == cplx{1.0});

  const auto s = polylog_coeffs(cplx{0.0, 1.0}, 2, 5);
  const double l3 = std::log(3.0);
  const cplx expect = l3 * l3 * std::exp(cplx{0.0, -l3});
  CHECK(std::abs(s[3] - expect) < 1e-15);
}

TEST_CASE("ring axioms on random series") {
  Philox rng(2024, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_series(rng, 64, false);
    const auto b = random_series(rng, 64, false);
    const auto c = random_series(rng, 64, false);
    CHECK(dist(add(add(a, b), c), add(a, add(b, c))) < 1e-12);
    CHECK(dist(mul(a, b), mul(b, a)) < 1e-12);
    CHECK(dist(mul(add(a, b), c), add(mul(a, c), mul(b, c))) < 1e-12);
    // Hadamard is coefficientwise: commutativity is bitwise; associativity
    // and distributivity hold to one complex-multiplication rounding.
    CHECK(dist(hadamard(a, b), hadamard(b, a)) == 0.0);
    CHECK(dist(hadamard(hadamard(a, b), c), hadamard(a, hadamard(b, c))) <
          1e-14);
    CHECK(dist(hadamard(add(a, b), c), add(hadamard(a, c), hadamard(b, c))) <
          1e-14);
  }
}

TEST_CASE("divide round-trips mul on invertible series") {
  // Divisors with geometrically decaying coefficients keep their roots off
  // the closed unit disk, so the quotient stays O(1) and the round trip is
  // testable at full precision.
  Philox rng(99, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_series(rng, 64, false);
    auto b = random_series(rng, 64, false);
    b[0] = cplx{2.0 + rng.next_double(), rng.next_double()};
    double decay = 1.0;
    for (std::size_t i = 1; i <= 64; ++i) {
      decay *= 0.5;
      b[i] *= decay;
    }
    const auto q = divide(a, b);
    const auto back = mul(q, b);
    double scale_ref = 1.0;
    for (std::size_t i = 0; i <= 64; ++i)
      scale_ref = std::max(scale_ref, std::abs(a[i]));
    CHECK(dist(back, a) < 1e-12 * scale_ref);
  }
}

TEST_CASE("truncation bookkeeping is min of operands") {
  const TruncatedSeries a(10), b(7);
  CHECK(add(a, b).truncation() == 7);
  CHECK(mul(a, b).truncation() == 7);
  CHECK(hadamard(b, a).truncation() == 7);
  CHECK(differentiate(a).truncation() == 9);
}

TEST_CASE("debug CSV dump") {
  TruncatedSeries s(2);
  s[1] = cplx{0.5, -1.0};
  std::ostringstream os;
  dump_csv(s, os);
  CHECK(os.str() == "n,re,im\n0,0,0\n1,0.5,-1\n2,0,0\n");
}
