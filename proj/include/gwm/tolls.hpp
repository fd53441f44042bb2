#pragma once

#include <string>
#include <vector>

#include "gwm/series.hpp"

namespace gwm {

/// A toll sequence b_n defining an additive functional F(T) = sum_v b_|T_v|.
///
/// Centered variants subtract an explicitly supplied centering constant
/// (computed by the limits module); the engine never recomputes centerings
/// implicitly.
class TollSequence {
 public:
  enum class Kind { kPower, kLog, kCenteredPower, kCenteredLog, kCustom };

  static TollSequence power(cplx alpha) {
    return TollSequence(Kind::kPower, alpha, cplx{});
  }
  static TollSequence log_size() {
    return TollSequence(Kind::kLog, cplx{}, cplx{});
  }
  static TollSequence centered_power(cplx alpha, cplx mu_alpha) {
    return TollSequence(Kind::kCenteredPower, alpha, mu_alpha);
  }
  static TollSequence centered_log(double mu_prime) {
    return TollSequence(Kind::kCenteredLog, cplx{}, cplx{mu_prime});
  }
  static TollSequence custom(std::vector<cplx> values) {
    TollSequence t(Kind::kCustom, cplx{}, cplx{});
    t.custom_ = std::move(values);
    return t;
  }

  Kind kind() const { return kind_; }
  cplx alpha() const { return alpha_; }
  cplx center() const { return center_; }

  /// b_n, n >= 1.
  cplx eval(std::size_t n) const;

  /// B(z) = sum_{n>=1} b_n z^n.
  TruncatedSeries series(std::size_t truncation) const;

  std::string describe() const;

  bool operator==(const TollSequence& o) const;

 private:
  TollSequence(Kind kind, cplx alpha, cplx center)
      : kind_(kind), alpha_(alpha), center_(center) {}

  Kind kind_;
  cplx alpha_;
  cplx center_;
  std::vector<cplx> custom_;  // custom_[n-1] = b_n
};

}  // namespace gwm
