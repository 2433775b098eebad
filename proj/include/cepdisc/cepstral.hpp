#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cepdisc/spectral.hpp"
#include "cepdisc/types.hpp"

namespace cepdisc {

/// First L cepstral coefficients of an estimated log-spectrum: the cosine
/// series c_0 = mean(gamma), c_l = (sqrt(2)/N) sum_m gamma_m cos(2 pi m l / N).
struct CepstralVector {
  Eigen::VectorXd coefficients;  ///< c_0 .. c_{L-1}
  int sourceLength = 0;          ///< N of the originating series (0 if unknown)
  std::optional<int> group;
  std::string id;

  int size() const { return static_cast<int>(coefficients.size()); }
};

/// Cosine-series coefficients of the estimate over its full frequency grid.
/// Requires 1 <= L <= floor(N/2)+1.
CepstralVector cepstral_coefficients(const LogSpectrumEstimate& estimate,
                                     int truncation);

/// Labeled training set: n cepstral vectors of identical length L covering
/// J >= 2 groups (1-based, contiguous), each group with at least two vectors.
struct LabeledCepstralCorpus {
  std::vector<CepstralVector> vectors;
  int truncation = 0;           ///< L
  int groupCount = 0;           ///< J
  std::vector<int> groupSizes;  ///< n_1 .. n_J

  int size() const { return static_cast<int>(vectors.size()); }
};

/// Validates and assembles a corpus from already-computed cepstral vectors.
/// Throws std::invalid_argument when any vector is unlabeled, lengths are
/// mixed, fewer than two groups appear, a group index is out of range, or a
/// group has fewer than two vectors.
LabeledCepstralCorpus make_labeled_corpus(std::vector<CepstralVector> vectors);

/// Runs the configured log-spectrum estimator on every epoch and truncates at
/// `truncation` coefficients. All epochs must be labeled and share one length.
LabeledCepstralCorpus corpus_from_epochs(
    const std::vector<TimeSeriesEpoch>& epochs, const EstimatorConfig& config,
    int truncation);

/// Copy of the corpus keeping only the first `truncation` coefficients.
LabeledCepstralCorpus truncate_corpus(const LabeledCepstralCorpus& corpus,
                                      int truncation);

}  // namespace cepdisc
