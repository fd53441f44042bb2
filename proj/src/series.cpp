#include "gwm/series.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace gwm {

TruncatedSeries::TruncatedSeries(std::vector<cplx> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.resize(1);
}

TruncatedSeries TruncatedSeries::truncated(std::size_t m) const {
  TruncatedSeries out(m);
  const std::size_t upto = std::min(m, truncation());
  for (std::size_t n = 0; n <= upto; ++n) out[n] = coeffs_[n];
  return out;
}

TruncatedSeries TruncatedSeries::one(std::size_t truncation) {
  TruncatedSeries s(truncation);
  s[0] = 1.0;
  return s;
}

TruncatedSeries TruncatedSeries::z(std::size_t truncation) {
  TruncatedSeries s(truncation);
  if (truncation >= 1) s[1] = 1.0;
  return s;
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.truncation(), b.truncation());
  TruncatedSeries out(n);
  for (std::size_t i = 0; i <= n; ++i) out[i] = a[i] + b[i];
  return out;
}

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.truncation(), b.truncation());
  TruncatedSeries out(n);
  for (std::size_t i = 0; i <= n; ++i) out[i] = a[i] - b[i];
  return out;
}

TruncatedSeries scale(const TruncatedSeries& a, cplx lambda) {
  TruncatedSeries out(a.truncation());
  for (std::size_t i = 0; i <= a.truncation(); ++i) out[i] = lambda * a[i];
  return out;
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.truncation(), b.truncation());
  TruncatedSeries out(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] == cplx{}) continue;
    const cplx ai = a[i];
    for (std::size_t j = 0; i + j <= n; ++j) out[i + j] += ai * b[j];
  }
  return out;
}

TruncatedSeries hadamard(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.truncation(), b.truncation());
  TruncatedSeries out(n);
  for (std::size_t i = 0; i <= n; ++i) out[i] = a[i] * b[i];
  return out;
}

TruncatedSeries divide(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.truncation(), b.truncation());
  std::size_t ord = 0;
  while (ord <= n && b[ord] == cplx{}) ++ord;
  if (ord > n) throw domain_error("series divide: divisor is identically zero");
  for (std::size_t i = 0; i < ord; ++i) {
    if (a[i] != cplx{})
      throw domain_error(
          "series divide: dividend has lower leading order than divisor");
  }
  const std::size_t m = n - ord;  // truncation after cancelling z^ord
  TruncatedSeries out(m);
  const cplx b0 = b[ord];
  for (std::size_t i = 0; i <= m; ++i) {
    cplx acc = a[i + ord];
    for (std::size_t j = 1; j <= i; ++j) acc -= b[ord + j] * out[i - j];
    out[i] = acc / b0;
  }
  return out;
}

TruncatedSeries differentiate(const TruncatedSeries& a) {
  const std::size_t n = a.truncation();
  TruncatedSeries out(n == 0 ? 0 : n - 1);
  for (std::size_t i = 1; i <= n; ++i) out[i - 1] = double(i) * a[i];
  return out;
}

TruncatedSeries polylog_coeffs(cplx alpha, unsigned r,
                               std::size_t truncation) {
  TruncatedSeries out(truncation);
  for (std::size_t n = 1; n <= truncation; ++n) {
    const double ln = std::log(double(n));
    cplx c = std::exp(-alpha * ln);
    for (unsigned k = 0; k < r; ++k) c *= ln;
    out[n] = c;
  }
  return out;
}

void dump_csv(const TruncatedSeries& s, std::ostream& os) {
  os << "n,re,im\n" << std::setprecision(17);
  for (std::size_t n = 0; n <= s.truncation(); ++n)
    os << n << "," << s[n].real() << "," << s[n].imag() << "\n";
}

}  // namespace gwm
