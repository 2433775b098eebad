#include "cepdisc/types.hpp"

#include <cmath>
#include <stdexcept>

namespace cepdisc {

void validate_epoch(const TimeSeriesEpoch& epoch) {
  if (epoch.length() < 8) {
    throw std::invalid_argument("epoch '" + epoch.id + "' has length " +
                                std::to_string(epoch.length()) +
                                "; at least 8 samples are required");
  }
  for (double v : epoch.values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("epoch '" + epoch.id +
                                  "' contains a non-finite value");
    }
  }
  if (epoch.group && *epoch.group < 1) {
    throw std::invalid_argument("epoch '" + epoch.id +
                                "' has non-positive group index");
  }
}

std::string to_string(SpectrumEstimatorKind kind) {
  switch (kind) {
    case SpectrumEstimatorKind::Multitaper:
      return "multitaper";
    case SpectrumEstimatorKind::Direct:
      return "direct";
    case SpectrumEstimatorKind::Smoothed:
      return "smoothed";
  }
  throw std::invalid_argument("unknown estimator kind");
}

SpectrumEstimatorKind estimator_kind_from_string(const std::string& name) {
  if (name == "multitaper") return SpectrumEstimatorKind::Multitaper;
  if (name == "direct") return SpectrumEstimatorKind::Direct;
  if (name == "smoothed") return SpectrumEstimatorKind::Smoothed;
  throw std::invalid_argument("unknown estimator kind '" + name +
                              "' (expected multitaper, direct or smoothed)");
}

void validate(const EstimatorConfig& config) {
  if (config.kind == SpectrumEstimatorKind::Multitaper && config.tapers < 1) {
    throw std::invalid_argument("taper count must be >= 1, got " +
                                std::to_string(config.tapers));
  }
  if (config.kind == SpectrumEstimatorKind::Smoothed && config.span != 0) {
    if (config.span < 1 || config.span % 2 == 0) {
      throw std::invalid_argument("smoothing span must be odd and >= 1, got " +
                                  std::to_string(config.span));
    }
  }
  if (!(config.options.jitter >= 0.0) ||
      !std::isfinite(config.options.jitter)) {
    throw std::invalid_argument("jitter must be finite and >= 0");
  }
}

}  // namespace cepdisc
