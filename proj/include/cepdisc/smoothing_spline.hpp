#pragma once

#include <vector>

namespace cepdisc {

/// Natural cubic smoothing spline: minimizes
///   sum_i (y_i - g(x_i))^2 + lambda * integral of g''(u)^2 du
/// over twice-differentiable g for strictly increasing knots x_1 < .. < x_n,
/// n >= 3. Evaluation extrapolates linearly outside the knot range.
class SmoothingSpline {
 public:
  /// Fit with a fixed penalty lambda >= 0 (0 interpolates the data).
  SmoothingSpline(std::vector<double> x, std::vector<double> y, double lambda);

  /// Fit with lambda chosen by generalized cross-validation over a log-spaced
  /// grid scaled to the knot spacing. Ties prefer the smaller lambda.
  static SmoothingSpline fit_gcv(std::vector<double> x, std::vector<double> y);

  double operator()(double at) const;

  double lambda() const { return lambda_; }
  const std::vector<double>& fittedValues() const { return fitted_; }
  const std::vector<double>& knots() const { return x_; }

 private:
  SmoothingSpline() = default;

  std::vector<double> x_;
  std::vector<double> fitted_;
  std::vector<double> gamma_;  ///< second derivatives at the knots, ends zero
  double lambda_ = 0.0;
};

}  // namespace cepdisc
