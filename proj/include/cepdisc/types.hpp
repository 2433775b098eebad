#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cepdisc {

/// One real-valued series of length N, optionally tagged with a 1-based group
/// index. Series are assumed detrended; values must be finite and N >= 8.
struct TimeSeriesEpoch {
  std::string id;
  std::optional<int> group;
  std::vector<double> values;

  int length() const { return static_cast<int>(values.size()); }
};

/// Throws std::invalid_argument unless the epoch has N >= 8 finite values.
void validate_epoch(const TimeSeriesEpoch& epoch);

enum class SpectrumEstimatorKind { Multitaper, Direct, Smoothed };

std::string to_string(SpectrumEstimatorKind kind);

/// Inverse of to_string. Throws std::invalid_argument on unknown names.
SpectrumEstimatorKind estimator_kind_from_string(const std::string& name);

/// Low-level knobs shared by every log-spectrum estimator.
struct SpectralOptions {
  /// Divide periodograms by N. This shifts every log-spectrum by -log N,
  /// which all discriminant quantities are invariant to. Off by default.
  bool normalizedPeriodogram = false;

  /// Added to the (averaged) periodogram before taking the log. Zero keeps
  /// exactly-zero bins as hard errors, which they should normally be.
  double jitter = 0.0;
};

/// Which log-spectrum estimator to run and with what parameters.
struct EstimatorConfig {
  SpectrumEstimatorKind kind = SpectrumEstimatorKind::Multitaper;
  int tapers = 7;  ///< multitaper only
  int span = 0;    ///< smoothed only; 0 selects the span per epoch by GCV
  SpectralOptions options;
};

/// Throws std::invalid_argument on out-of-range parameters.
void validate(const EstimatorConfig& config);

}  // namespace cepdisc
