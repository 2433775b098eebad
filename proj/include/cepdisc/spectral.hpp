#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cepdisc/errors.hpp"
#include "cepdisc/types.hpp"

namespace cepdisc {

/// Bank of R orthonormal tapers of length N: sum_t h(r,t) h(s,t) = 1{r=s}.
/// Row r-1 holds taper r.
struct TaperBank {
  int length = 0;  ///< N
  int count = 0;   ///< R
  Eigen::MatrixXd h;
};

/// Sine tapers h_{rt} = sqrt(2/(N+1)) sin(pi t r / (N+1)), t = 1..N.
/// Requires 1 <= count <= length.
TaperBank sine_tapers(int length, int count);

/// Estimated log-spectrum on the Fourier grid lambda_m = m/N, m = 0..N-1.
/// Values are even-symmetric: values[m] == values[N-m] for m >= 1.
struct LogSpectrumEstimate {
  std::vector<double> values;
  int sourceLength = 0;
  SpectrumEstimatorKind estimator = SpectrumEstimatorKind::Direct;
  int estimatorParam = 1;  ///< taper count, or resolved smoothing span

  int gridSize() const { return static_cast<int>(values.size()); }
};

/// Tapered periodogram I_m = |sum_t h(r,t) X_t exp(-2 pi i m t / N)|^2 on the
/// full grid m = 0..N-1, using row `taper` (1-based) of the bank. With
/// `normalized`, I_m is divided by N.
std::vector<double> tapered_periodogram(const TimeSeriesEpoch& epoch,
                                        const TaperBank& bank, int taper,
                                        bool normalized = false);

/// Log of the average of `tapers` sine-tapered periodograms. Throws
/// DegenerateSpectrumError if the averaged periodogram (plus jitter) is not
/// strictly positive at every bin.
LogSpectrumEstimate multitaper_log_spectrum(const TimeSeriesEpoch& epoch,
                                            int tapers,
                                            const SpectralOptions& options = {});

/// Same, reusing a prebuilt taper bank with bank.length == epoch length.
LogSpectrumEstimate multitaper_log_spectrum(const TimeSeriesEpoch& epoch,
                                            const TaperBank& bank,
                                            const SpectralOptions& options = {});

/// Log of the first sine-tapered periodogram (single-taper estimate).
LogSpectrumEstimate direct_log_spectrum(const TimeSeriesEpoch& epoch,
                                        const SpectralOptions& options = {});

/// First tapered periodogram smoothed circularly by modified Daniell weights.
/// span must be odd with 1 <= span <= N; span 0 selects it by gcv_span.
/// Linear scale; used directly by the information-measure classifiers.
std::vector<double> smoothed_periodogram(const TimeSeriesEpoch& epoch,
                                         int span = 0,
                                         const SpectralOptions& options = {});

/// Log of smoothed_periodogram, with the same degeneracy rule as the other
/// estimators. estimatorParam records the resolved span.
LogSpectrumEstimate smoothed_log_spectrum(const TimeSeriesEpoch& epoch,
                                          int span = 0,
                                          const SpectralOptions& options = {});

/// Modified Daniell weights: interior 1/(span-1), endpoints 1/(2(span-1)),
/// summing to one. span must be odd and >= 1; span 1 gives the identity.
std::vector<double> modified_daniell_weights(int span);

/// Circular convolution of `values` with modified Daniell weights.
std::vector<double> modified_daniell_smooth(const std::vector<double>& values,
                                            int span);

/// Candidate spans {3, 5, ..., 2 floor(sqrt(N)) + 1} searched by gcv_span.
std::vector<int> gcv_candidate_spans(int length);

/// Generalized cross-validation choice of modified Daniell span for the first
/// tapered periodogram of `epoch`, over the nonredundant ordinates
/// m = 0..floor(N/2). Ties prefer the smaller span. Requires N >= 16.
int gcv_span(const TimeSeriesEpoch& epoch);

/// Dispatch on config.kind to one of the three estimators above.
LogSpectrumEstimate estimate_log_spectrum(const TimeSeriesEpoch& epoch,
                                          const EstimatorConfig& config);

}  // namespace cepdisc
