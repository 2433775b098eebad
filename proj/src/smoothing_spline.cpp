#include "cepdisc/smoothing_spline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace cepdisc {

namespace {

void check_knots(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("knot and value vectors differ in length");
  }
  if (x.size() < 3) {
    throw std::invalid_argument("smoothing spline needs at least 3 knots");
  }
  for (size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw std::invalid_argument("knots and values must be finite");
    }
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw std::invalid_argument("knots must be strictly increasing");
    }
  }
}

// Banded penalty machinery of the Reinsch formulation: the fit solves
// (R + lambda Q'Q) gamma = Q'y, g = y - lambda Q gamma, with Q the second
// difference operator and R the roughness Gram matrix.
struct SplineSystem {
  Eigen::MatrixXd q;    // n x (n-2)
  Eigen::MatrixXd r;    // (n-2) x (n-2)
  Eigen::MatrixXd qtq;  // (n-2) x (n-2)
  Eigen::VectorXd y;

  explicit SplineSystem(const std::vector<double>& x,
                        const std::vector<double>& values) {
    const int n = static_cast<int>(x.size());
    q = Eigen::MatrixXd::Zero(n, n - 2);
    r = Eigen::MatrixXd::Zero(n - 2, n - 2);
    y = Eigen::Map<const Eigen::VectorXd>(values.data(), n);
    std::vector<double> h(static_cast<size_t>(n - 1));
    for (int i = 0; i + 1 < n; ++i) h[i] = x[i + 1] - x[i];
    for (int j = 1; j + 1 < n; ++j) {
      const int c = j - 1;
      q(j - 1, c) = 1.0 / h[j - 1];
      q(j, c) = -1.0 / h[j - 1] - 1.0 / h[j];
      q(j + 1, c) = 1.0 / h[j];
      r(c, c) = (h[j - 1] + h[j]) / 3.0;
      if (j + 2 < n) {
        r(c, c + 1) = h[j] / 6.0;
        r(c + 1, c) = h[j] / 6.0;
      }
    }
    qtq = q.transpose() * q;
  }

  struct Fit {
    Eigen::VectorXd g;
    Eigen::VectorXd gammaInterior;
    double rss = 0.0;
    double traceHat = 0.0;
  };

  Fit solve(double lambda) const {
    const Eigen::MatrixXd b = r + lambda * qtq;
    const Eigen::LLT<Eigen::MatrixXd> llt(b);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("smoothing spline system is not positive "
                               "definite");
    }
    Fit fit;
    fit.gammaInterior = llt.solve(q.transpose() * y);
    fit.g = y - lambda * (q * fit.gammaInterior);
    fit.rss = (y - fit.g).squaredNorm();
    fit.traceHat =
        static_cast<double>(y.size()) - lambda * llt.solve(qtq).trace();
    return fit;
  }
};

}  // namespace

SmoothingSpline::SmoothingSpline(std::vector<double> x, std::vector<double> y,
                                 double lambda) {
  check_knots(x, y);
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be finite and >= 0");
  }
  const SplineSystem system(x, y);
  const SplineSystem::Fit fit = system.solve(lambda);
  x_ = std::move(x);
  lambda_ = lambda;
  fitted_.assign(fit.g.data(), fit.g.data() + fit.g.size());
  gamma_.assign(x_.size(), 0.0);
  for (int c = 0; c < fit.gammaInterior.size(); ++c) {
    gamma_[static_cast<size_t>(c) + 1] = fit.gammaInterior[c];
  }
}

SmoothingSpline SmoothingSpline::fit_gcv(std::vector<double> x,
                                         std::vector<double> y) {
  check_knots(x, y);
  const int n = static_cast<int>(x.size());
  const SplineSystem system(x, y);

  // Log-spaced grid centered on the cube of the mean knot spacing, the scale
  // at which fidelity and roughness terms balance.
  const double spacing = (x.back() - x.front()) / (n - 1);
  const double base = spacing * spacing * spacing;
  double bestLambda = 0.0;
  double bestScore = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 24; ++k) {
    const double lambda = base * std::pow(10.0, -6.0 + 0.5 * k);
    const SplineSystem::Fit fit = system.solve(lambda);
    const double denom = n - fit.traceHat;
    const double score = n * fit.rss / (denom * denom);
    if (score < bestScore) {
      bestScore = score;
      bestLambda = lambda;
    }
  }
  return SmoothingSpline(std::move(x), std::move(y), bestLambda);
}

double SmoothingSpline::operator()(double at) const {
  const int n = static_cast<int>(x_.size());
  if (at <= x_.front()) {
    const double h = x_[1] - x_[0];
    const double slope = (fitted_[1] - fitted_[0]) / h - h * gamma_[1] / 6.0;
    return fitted_[0] + slope * (at - x_[0]);
  }
  if (at >= x_.back()) {
    const double h = x_[n - 1] - x_[n - 2];
    const double slope =
        (fitted_[n - 1] - fitted_[n - 2]) / h + h * gamma_[n - 2] / 6.0;
    return fitted_[n - 1] + slope * (at - x_[n - 1]);
  }
  const auto upper = std::upper_bound(x_.begin(), x_.end(), at);
  const int i = static_cast<int>(upper - x_.begin()) - 1;
  const double h = x_[i + 1] - x_[i];
  const double left = at - x_[i];
  const double right = x_[i + 1] - at;
  return (right * fitted_[i] + left * fitted_[i + 1]) / h -
         left * right / 6.0 *
             ((1.0 + right / h) * gamma_[i] + (1.0 + left / h) * gamma_[i + 1]);
}

}  // namespace cepdisc
