#pragma once

#include <cstddef>
#include <vector>

#include "gwm/offspring.hpp"
#include "gwm/series.hpp"

namespace gwm {

/// The law of the unconditioned tree size |T|: q_n = P(|T| = n) up to a
/// truncation N, computed from the fixed point y = z Phi(y) by triangular
/// coefficient extraction.
class TreeSizeLaw {
 public:
  TreeSizeLaw(OffspringLaw law, std::size_t truncation);

  const OffspringLaw& law() const { return law_; }
  std::size_t truncation() const { return q_.size() - 1; }

  double q(std::size_t n) const { return n < q_.size() ? q_[n] : 0.0; }
  const std::vector<double>& q_table() const { return q_; }

  /// n is an attainable tree size iff n == 1 (mod span).
  bool attainable(std::size_t n) const {
    return n >= 1 && (n - 1) % law_.span() == 0;
  }

  /// q as a complex series (the engine currency).
  TruncatedSeries series() const;

  /// q_n * sqrt(2 pi) * sigma * n^(3/2) / span, which tends to 1.
  /// Throws domain_error for unattainable n (naming the span).
  double asymptotic_ratio(std::size_t n) const;

  /// Max over n <= upto of |q_n - [z^n] z Phi(y)| with the composition
  /// evaluated independently of the recursion that built q.
  double fixed_point_residual(std::size_t upto) const;

  /// Coefficients (c0, c1, c2) of the fitted tail model
  /// q_n ~ n^(-3/2) (c0 + c1/n + c2/n^2) over attainable n near N.
  struct TailModel {
    double c0, c1, c2;
    std::size_t fit_n;  // largest attainable index used
  };
  TailModel tail_model() const;

  /// sum_{n > N, attainable} q~_n (n + shift)^alpha for the fitted tail
  /// model; completes partial series sums.  Requires Re alpha < 1/2.
  cplx tail_sum_power(cplx alpha, double shift = 0.0) const;

  /// sum_{n > N, attainable} q~_n log n for the fitted tail model.
  double tail_sum_log() const;

 private:
  OffspringLaw law_;
  std::vector<double> q_;
};

/// The smallest fixed point of w -> t Phi(w) on [0,1]: y(t) = E t^|T|.
/// Monotone iteration from 0; y(0) = 0, y(1) = 1.
double y_eval(const OffspringLaw& law, double t);

/// R(eta) = Phi(eta)/eta, eta in (0, 1]; strictly decreasing, R(1) = 1.
double r_eval(const OffspringLaw& law, double eta);

/// log R(eta), computed without cancellation near eta = 1 where
/// R(eta) - 1 ~ variance (1-eta)^2 / 2.
double log_r_eval(const OffspringLaw& law, double eta);

}  // namespace gwm
