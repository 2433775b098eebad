#include "cepdisc/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace cepdisc {

namespace {

// Average of the first `count` tapered periodograms of the bank.
std::vector<double> averaged_periodogram(const TimeSeriesEpoch& epoch,
                                         const TaperBank& bank,
                                         const SpectralOptions& options) {
  const int n = epoch.length();
  detail::RealDft dft(n);
  std::vector<double> tapered(n), power(n), mean(n, 0.0);
  for (int r = 0; r < bank.count; ++r) {
    for (int t = 0; t < n; ++t) tapered[t] = bank.h(r, t) * epoch.values[t];
    dft.power(tapered.data(), power.data());
    for (int m = 0; m < n; ++m) mean[m] += power[m];
  }
  double scale = 1.0 / bank.count;
  if (options.normalizedPeriodogram) scale /= n;
  for (int m = 0; m < n; ++m) mean[m] *= scale;
  return mean;
}

// log of `periodogram` plus jitter, failing loudly on non-positive bins.
std::vector<double> safe_log(const std::vector<double>& periodogram,
                             double jitter, const std::string& what) {
  std::vector<double> logged(periodogram.size());
  for (size_t m = 0; m < periodogram.size(); ++m) {
    const double v = periodogram[m] + jitter;
    if (!(v > 0.0)) {
      throw DegenerateSpectrumError(
          what + " is not positive at frequency bin " + std::to_string(m) +
          "; the log-spectrum is undefined (a positive jitter option works "
          "around exact zeros)");
    }
    logged[m] = std::log(v);
  }
  return logged;
}

void check_options(const SpectralOptions& options) {
  if (!(options.jitter >= 0.0) || !std::isfinite(options.jitter)) {
    throw std::invalid_argument("jitter must be finite and >= 0");
  }
}

// Shared body of smoothed_periodogram / smoothed_log_spectrum; reports the
// resolved span through `resolvedSpan`.
std::vector<double> smoothed_periodogram_impl(const TimeSeriesEpoch& epoch,
                                              int span,
                                              const SpectralOptions& options,
                                              int& resolvedSpan) {
  validate_epoch(epoch);
  check_options(options);
  const int n = epoch.length();
  if (span == 0) {
    resolvedSpan = gcv_span(epoch);
  } else {
    if (span < 1 || span % 2 == 0 || span > n) {
      throw std::invalid_argument(
          "smoothing span must be odd with 1 <= span <= N, got " +
          std::to_string(span));
    }
    resolvedSpan = span;
  }
  const TaperBank bank = sine_tapers(n, 1);
  const std::vector<double> raw = averaged_periodogram(epoch, bank, options);
  return modified_daniell_smooth(raw, resolvedSpan);
}

}  // namespace

TaperBank sine_tapers(int length, int count) {
  if (length < 1) {
    throw std::invalid_argument("taper length must be >= 1, got " +
                                std::to_string(length));
  }
  if (count < 1 || count > length) {
    throw std::invalid_argument("taper count must satisfy 1 <= R <= N, got R=" +
                                std::to_string(count) +
                                " with N=" + std::to_string(length));
  }
  TaperBank bank;
  bank.length = length;
  bank.count = count;
  bank.h.resize(count, length);
  const double norm = std::sqrt(2.0 / (length + 1));
  for (int r = 1; r <= count; ++r) {
    for (int t = 1; t <= length; ++t) {
      bank.h(r - 1, t - 1) =
          norm * std::sin(std::numbers::pi * t * r / (length + 1));
    }
  }
  return bank;
}

std::vector<double> tapered_periodogram(const TimeSeriesEpoch& epoch,
                                        const TaperBank& bank, int taper,
                                        bool normalized) {
  validate_epoch(epoch);
  const int n = epoch.length();
  if (bank.length != n) {
    throw std::invalid_argument(
        "taper length " + std::to_string(bank.length) +
        " does not match epoch length " + std::to_string(n));
  }
  if (taper < 1 || taper > bank.count) {
    throw std::invalid_argument("taper index " + std::to_string(taper) +
                                " outside 1.." + std::to_string(bank.count));
  }
  detail::RealDft dft(n);
  std::vector<double> tapered(n), power(n);
  for (int t = 0; t < n; ++t) {
    tapered[t] = bank.h(taper - 1, t) * epoch.values[t];
  }
  dft.power(tapered.data(), power.data());
  if (normalized) {
    for (double& p : power) p /= n;
  }
  return power;
}

LogSpectrumEstimate multitaper_log_spectrum(const TimeSeriesEpoch& epoch,
                                            int tapers,
                                            const SpectralOptions& options) {
  validate_epoch(epoch);
  return multitaper_log_spectrum(epoch, sine_tapers(epoch.length(), tapers),
                                 options);
}

LogSpectrumEstimate multitaper_log_spectrum(const TimeSeriesEpoch& epoch,
                                            const TaperBank& bank,
                                            const SpectralOptions& options) {
  validate_epoch(epoch);
  check_options(options);
  if (bank.length != epoch.length()) {
    throw std::invalid_argument(
        "taper length " + std::to_string(bank.length) +
        " does not match epoch length " + std::to_string(epoch.length()));
  }
  LogSpectrumEstimate estimate;
  estimate.values = safe_log(averaged_periodogram(epoch, bank, options),
                             options.jitter, "averaged periodogram");
  estimate.sourceLength = epoch.length();
  estimate.estimator = bank.count == 1 ? SpectrumEstimatorKind::Direct
                                       : SpectrumEstimatorKind::Multitaper;
  estimate.estimatorParam = bank.count;
  return estimate;
}

LogSpectrumEstimate direct_log_spectrum(const TimeSeriesEpoch& epoch,
                                        const SpectralOptions& options) {
  validate_epoch(epoch);
  return multitaper_log_spectrum(epoch, sine_tapers(epoch.length(), 1),
                                 options);
}

std::vector<double> smoothed_periodogram(const TimeSeriesEpoch& epoch,
                                         int span,
                                         const SpectralOptions& options) {
  int resolved = 0;
  return smoothed_periodogram_impl(epoch, span, options, resolved);
}

LogSpectrumEstimate smoothed_log_spectrum(const TimeSeriesEpoch& epoch,
                                          int span,
                                          const SpectralOptions& options) {
  int resolved = 0;
  const std::vector<double> smoothed =
      smoothed_periodogram_impl(epoch, span, options, resolved);
  LogSpectrumEstimate estimate;
  estimate.values = safe_log(smoothed, options.jitter, "smoothed periodogram");
  estimate.sourceLength = epoch.length();
  estimate.estimator = SpectrumEstimatorKind::Smoothed;
  estimate.estimatorParam = resolved;
  return estimate;
}

std::vector<double> modified_daniell_weights(int span) {
  if (span < 1 || span % 2 == 0) {
    throw std::invalid_argument("span must be odd and >= 1, got " +
                                std::to_string(span));
  }
  if (span == 1) return {1.0};
  std::vector<double> weights(span, 1.0 / (span - 1));
  weights.front() = 1.0 / (2.0 * (span - 1));
  weights.back() = 1.0 / (2.0 * (span - 1));
  return weights;
}

std::vector<double> modified_daniell_smooth(const std::vector<double>& values,
                                            int span) {
  const int n = static_cast<int>(values.size());
  if (span > n) {
    throw std::invalid_argument("span " + std::to_string(span) +
                                " exceeds grid size " + std::to_string(n));
  }
  const std::vector<double> weights = modified_daniell_weights(span);
  if (span == 1) return values;
  const int k = (span - 1) / 2;
  std::vector<double> smoothed(n, 0.0);
  for (int m = 0; m < n; ++m) {
    double acc = 0.0;
    for (int j = -k; j <= k; ++j) {
      const int idx = ((m + j) % n + n) % n;
      acc += weights[j + k] * values[idx];
    }
    smoothed[m] = acc;
  }
  return smoothed;
}

std::vector<int> gcv_candidate_spans(int length) {
  const int top = 2 * static_cast<int>(std::floor(std::sqrt(
                          static_cast<double>(length)))) +
                  1;
  std::vector<int> spans;
  for (int s = 3; s <= top; s += 2) spans.push_back(s);
  return spans;
}

int gcv_span(const TimeSeriesEpoch& epoch) {
  validate_epoch(epoch);
  const int n = epoch.length();
  if (n < 16) {
    throw std::invalid_argument(
        "GCV span selection needs N >= 16, got N=" + std::to_string(n));
  }
  const TaperBank bank = sine_tapers(n, 1);
  const std::vector<double> raw = tapered_periodogram(epoch, bank, 1);

  // The smoother acts on the nonredundant ordinates m = 0..floor(N/2); its
  // circular action on the symmetric full grid realizes the symmetric
  // boundary extension, so both the fit and the trace come from folding the
  // full-grid convolution back onto 0..floor(N/2).
  const int half = n / 2;  // last nonredundant index
  const auto fold = [n, half](int idx) {
    const int wrapped = ((idx % n) + n) % n;
    return wrapped <= half ? wrapped : n - wrapped;
  };

  int best = 0;
  double bestScore = std::numeric_limits<double>::infinity();
  for (int span : gcv_candidate_spans(n)) {
    const std::vector<double> weights = modified_daniell_weights(span);
    const int k = (span - 1) / 2;
    double rss = 0.0;
    double trace = 0.0;
    for (int m = 0; m <= half; ++m) {
      double fit = 0.0;
      double diag = 0.0;
      for (int j = -k; j <= k; ++j) {
        const int idx = ((m + j) % n + n) % n;
        fit += weights[j + k] * raw[idx];
        if (fold(m + j) == m) diag += weights[j + k];
      }
      const double resid = raw[m] - fit;
      rss += resid * resid;
      trace += diag;
    }
    const int count = half + 1;
    const double denom = 1.0 - trace / count;
    const double score = rss / (denom * denom);
    if (score < bestScore) {
      bestScore = score;
      best = span;
    }
  }
  return best;
}

LogSpectrumEstimate estimate_log_spectrum(const TimeSeriesEpoch& epoch,
                                          const EstimatorConfig& config) {
  validate(config);
  switch (config.kind) {
    case SpectrumEstimatorKind::Multitaper:
      return multitaper_log_spectrum(epoch, config.tapers, config.options);
    case SpectrumEstimatorKind::Direct:
      return direct_log_spectrum(epoch, config.options);
    case SpectrumEstimatorKind::Smoothed:
      return smoothed_log_spectrum(epoch, config.span, config.options);
  }
  throw std::invalid_argument("unknown estimator kind");
}

}  // namespace cepdisc
