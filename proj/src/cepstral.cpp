#include "cepdisc/cepstral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace cepdisc {

CepstralVector cepstral_coefficients(const LogSpectrumEstimate& estimate,
                                     int truncation) {
  const int n = estimate.gridSize();
  if (n < 1) throw std::invalid_argument("log-spectrum estimate is empty");
  const int maxTruncation = n / 2 + 1;
  if (truncation < 1 || truncation > maxTruncation) {
    throw std::invalid_argument(
        "cepstral truncation must satisfy 1 <= L <= floor(N/2)+1 = " +
        std::to_string(maxTruncation) + ", got L=" +
        std::to_string(truncation));
  }

  // c_l is sqrt(2)/N times the real part of DFT bin l of the log-spectrum
  // (1/N times bin 0 for l = 0), so one real-input transform yields them all.
  detail::RealDft dft(n);
  std::vector<double> cosineSums(static_cast<size_t>(n / 2 + 1));
  dft.real_part(estimate.values.data(), cosineSums.data());

  CepstralVector vector;
  vector.coefficients.resize(truncation);
  vector.coefficients[0] = cosineSums[0] / n;
  const double scale = std::numbers::sqrt2 / n;
  for (int l = 1; l < truncation; ++l) {
    vector.coefficients[l] = scale * cosineSums[l];
  }
  vector.sourceLength = estimate.sourceLength;
  return vector;
}

LabeledCepstralCorpus make_labeled_corpus(std::vector<CepstralVector> vectors) {
  if (vectors.empty()) {
    throw std::invalid_argument("corpus needs at least one cepstral vector");
  }
  const int truncation = vectors.front().size();
  if (truncation < 1) {
    throw std::invalid_argument("cepstral vectors must be non-empty");
  }
  int groupCount = 0;
  for (const CepstralVector& v : vectors) {
    if (v.size() != truncation) {
      throw std::invalid_argument(
          "cepstral vector '" + v.id + "' has length " +
          std::to_string(v.size()) + " but the corpus uses L=" +
          std::to_string(truncation));
    }
    if (!v.group) {
      throw std::invalid_argument("cepstral vector '" + v.id +
                                  "' is unlabeled; training requires groups");
    }
    if (*v.group < 1) {
      throw std::invalid_argument("cepstral vector '" + v.id +
                                  "' has non-positive group index");
    }
    groupCount = std::max(groupCount, *v.group);
  }
  if (groupCount < 2) {
    throw std::invalid_argument("corpus must cover at least two groups");
  }
  std::vector<int> sizes(static_cast<size_t>(groupCount), 0);
  for (const CepstralVector& v : vectors) ++sizes[*v.group - 1];
  for (int j = 0; j < groupCount; ++j) {
    if (sizes[j] < 2) {
      throw std::invalid_argument("group " + std::to_string(j + 1) + " has " +
                                  std::to_string(sizes[j]) +
                                  " vectors; at least 2 are required");
    }
  }

  LabeledCepstralCorpus corpus;
  corpus.vectors = std::move(vectors);
  corpus.truncation = truncation;
  corpus.groupCount = groupCount;
  corpus.groupSizes = std::move(sizes);
  return corpus;
}

LabeledCepstralCorpus corpus_from_epochs(
    const std::vector<TimeSeriesEpoch>& epochs, const EstimatorConfig& config,
    int truncation) {
  if (epochs.empty()) {
    throw std::invalid_argument("no epochs given");
  }
  validate(config);
  const int n = epochs.front().length();
  std::vector<CepstralVector> vectors;
  vectors.reserve(epochs.size());
  for (const TimeSeriesEpoch& epoch : epochs) {
    if (epoch.length() != n) {
      throw std::invalid_argument(
          "epoch '" + epoch.id + "' has length " +
          std::to_string(epoch.length()) + " but the corpus uses N=" +
          std::to_string(n));
    }
    if (!epoch.group) {
      throw std::invalid_argument("epoch '" + epoch.id +
                                  "' is unlabeled; training requires groups");
    }
    CepstralVector v =
        cepstral_coefficients(estimate_log_spectrum(epoch, config), truncation);
    v.group = epoch.group;
    v.id = epoch.id;
    vectors.push_back(std::move(v));
  }
  return make_labeled_corpus(std::move(vectors));
}

LabeledCepstralCorpus truncate_corpus(const LabeledCepstralCorpus& corpus,
                                      int truncation) {
  if (truncation < 1 || truncation > corpus.truncation) {
    throw std::invalid_argument(
        "truncation " + std::to_string(truncation) +
        " outside 1..L=" + std::to_string(corpus.truncation));
  }
  LabeledCepstralCorpus trimmed = corpus;
  trimmed.truncation = truncation;
  for (CepstralVector& v : trimmed.vectors) {
    v.coefficients.conservativeResize(truncation);
  }
  return trimmed;
}

}  // namespace cepdisc
