#pragma once

#include <vector>

#include "cepdisc/types.hpp"

namespace cepdisc {

/// Linear-scale spectrum estimate on the full Fourier grid, strictly positive
/// and even-symmetric.
struct SpectrumEstimate {
  std::vector<double> values;
  int sourceLength = 0;

  int gridSize() const { return static_cast<int>(values.size()); }
};

/// GCV-span smoothed periodogram of one epoch as a SpectrumEstimate. A fixed
/// odd span can be forced; 0 keeps per-epoch GCV selection.
SpectrumEstimate baseline_spectrum(const TimeSeriesEpoch& epoch, int span = 0,
                                   const SpectralOptions& options = {});

/// Per-group mean of training spectrum estimates.
struct GroupSpectrumTemplate {
  int group = 0;  ///< 1-based
  std::vector<double> values;
};

/// Templates for groups 1..J, averaging the spectra with matching labels.
/// Spectra and labels run in parallel; every group needs >= 1 spectrum and
/// all spectra must share one grid.
std::vector<GroupSpectrumTemplate> group_templates(
    const std::vector<SpectrumEstimate>& spectra,
    const std::vector<int>& groups);

/// Limiting Kullback-Leibler disparity between spectra f and g, averaged over
/// the nonredundant ordinates m = 0..floor(N/2):
///   mean of f/g - log(f/g) - 1.
/// Zero iff f == g; asymmetric in its arguments.
double kl_measure(const SpectrumEstimate& f, const GroupSpectrumTemplate& g);

/// Limiting Chernoff disparity with mixing parameter 0 < alpha < 1:
///   mean of log(alpha f/g + 1 - alpha) - alpha log(f/g)
/// over the nonredundant ordinates.
double chernoff_measure(const SpectrumEstimate& f,
                        const GroupSpectrumTemplate& g, double alpha);

struct InformationMeasureConfig {
  enum class Kind { KullbackLeibler, Chernoff };
  Kind kind = Kind::KullbackLeibler;
  double alpha = 0.5;  ///< Chernoff only
};

/// Assigns the test spectrum to the template with the smallest disparity
/// measure(test; template). Ties go to the smaller group index.
int classify_information(const SpectrumEstimate& test,
                         const std::vector<GroupSpectrumTemplate>& templates,
                         const InformationMeasureConfig& measure);

/// Default Chernoff tuning grid {0.1, 0.2, ..., 0.9}.
std::vector<double> default_alpha_grid();

/// Leave-one-out choice of the Chernoff alpha on labeled training spectra:
/// each held-out spectrum is classified against templates recomputed without
/// it. Ties prefer alpha closest to 0.5, then the smaller alpha. Requires
/// every group to hold >= 2 spectra.
double tune_chernoff_alpha(const std::vector<SpectrumEstimate>& spectra,
                           const std::vector<int>& groups,
                           const std::vector<double>& alphaGrid =
                               default_alpha_grid());

/// Convenience overload computing GCV-smoothed spectra from labeled epochs.
double tune_chernoff_alpha(const std::vector<TimeSeriesEpoch>& epochs,
                           const std::vector<double>& alphaGrid =
                               default_alpha_grid(),
                           int span = 0);

}  // namespace cepdisc
