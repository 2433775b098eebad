#include "cepdisc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cepdisc/errors.hpp"
#include "cepdisc/spectral.hpp"

namespace cepdisc {

namespace {

void check_positive(const std::vector<double>& values, const char* what) {
  for (size_t m = 0; m < values.size(); ++m) {
    if (!(values[m] > 0.0) || !std::isfinite(values[m])) {
      throw std::invalid_argument(std::string(what) +
                                  " must be strictly positive and finite "
                                  "(violated at bin " +
                                  std::to_string(m) + ")");
    }
  }
}

void check_grids(const SpectrumEstimate& f, const GroupSpectrumTemplate& g) {
  if (f.values.empty() || f.values.size() != g.values.size()) {
    throw std::invalid_argument(
        "spectrum and template grids differ: " +
        std::to_string(f.values.size()) + " vs " +
        std::to_string(g.values.size()));
  }
  check_positive(f.values, "spectrum estimate");
  check_positive(g.values, "group template");
}

}  // namespace

SpectrumEstimate baseline_spectrum(const TimeSeriesEpoch& epoch, int span,
                                   const SpectralOptions& options) {
  SpectrumEstimate estimate;
  estimate.values = smoothed_periodogram(epoch, span, options);
  for (double& v : estimate.values) v += options.jitter;
  estimate.sourceLength = epoch.length();
  for (size_t m = 0; m < estimate.values.size(); ++m) {
    if (!(estimate.values[m] > 0.0)) {
      throw DegenerateSpectrumError(
          "smoothed periodogram of epoch '" + epoch.id +
          "' is not positive at frequency bin " + std::to_string(m));
    }
  }
  return estimate;
}

std::vector<GroupSpectrumTemplate> group_templates(
    const std::vector<SpectrumEstimate>& spectra,
    const std::vector<int>& groups) {
  if (spectra.empty() || spectra.size() != groups.size()) {
    throw std::invalid_argument(
        "need one group label per spectrum estimate");
  }
  const size_t gridSize = spectra.front().values.size();
  int groupCount = 0;
  for (size_t i = 0; i < spectra.size(); ++i) {
    if (spectra[i].values.size() != gridSize) {
      throw std::invalid_argument("spectrum estimates use mixed grid sizes");
    }
    if (groups[i] < 1) {
      throw std::invalid_argument("group labels must be >= 1");
    }
    groupCount = std::max(groupCount, groups[i]);
  }
  std::vector<GroupSpectrumTemplate> templates(
      static_cast<size_t>(groupCount));
  std::vector<int> counts(static_cast<size_t>(groupCount), 0);
  for (int j = 0; j < groupCount; ++j) {
    templates[j].group = j + 1;
    templates[j].values.assign(gridSize, 0.0);
  }
  for (size_t i = 0; i < spectra.size(); ++i) {
    const int j = groups[i] - 1;
    ++counts[j];
    for (size_t m = 0; m < gridSize; ++m) {
      templates[j].values[m] += spectra[i].values[m];
    }
  }
  for (int j = 0; j < groupCount; ++j) {
    if (counts[j] == 0) {
      throw std::invalid_argument("group " + std::to_string(j + 1) +
                                  " has no training spectra");
    }
    for (double& v : templates[j].values) v /= counts[j];
  }
  return templates;
}

double kl_measure(const SpectrumEstimate& f, const GroupSpectrumTemplate& g) {
  check_grids(f, g);
  const int n = f.gridSize();
  const int half = n / 2;
  double acc = 0.0;
  for (int m = 0; m <= half; ++m) {
    const double ratio = f.values[m] / g.values[m];
    acc += ratio - std::log(ratio) - 1.0;
  }
  return acc / (half + 1);
}

double chernoff_measure(const SpectrumEstimate& f,
                        const GroupSpectrumTemplate& g, double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie strictly between 0 and 1");
  }
  check_grids(f, g);
  const int n = f.gridSize();
  const int half = n / 2;
  double acc = 0.0;
  for (int m = 0; m <= half; ++m) {
    const double ratio = f.values[m] / g.values[m];
    acc += std::log(alpha * ratio + 1.0 - alpha) - alpha * std::log(ratio);
  }
  return acc / (half + 1);
}

int classify_information(const SpectrumEstimate& test,
                         const std::vector<GroupSpectrumTemplate>& templates,
                         const InformationMeasureConfig& measure) {
  if (templates.empty()) {
    throw std::invalid_argument("no group templates given");
  }
  int best = -1;
  double bestValue = 0.0;
  for (const GroupSpectrumTemplate& candidate : templates) {
    const double value =
        measure.kind == InformationMeasureConfig::Kind::KullbackLeibler
            ? kl_measure(test, candidate)
            : chernoff_measure(test, candidate, measure.alpha);
    if (best < 0 || value < bestValue ||
        (value == bestValue && candidate.group < best)) {
      best = candidate.group;
      bestValue = value;
    }
  }
  return best;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 9; ++k) grid.push_back(k / 10.0);
  return grid;
}

double tune_chernoff_alpha(const std::vector<SpectrumEstimate>& spectra,
                           const std::vector<int>& groups,
                           const std::vector<double>& alphaGrid) {
  if (alphaGrid.empty()) {
    throw std::invalid_argument("alpha grid is empty");
  }
  for (double alpha : alphaGrid) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
      throw std::invalid_argument("alpha must lie strictly between 0 and 1");
    }
  }
  // Validates labels/grids and gives per-group sums for cheap leave-one-out
  // template downdates.
  const std::vector<GroupSpectrumTemplate> full = group_templates(spectra, groups);
  const int groupCount = static_cast<int>(full.size());
  std::vector<int> counts(static_cast<size_t>(groupCount), 0);
  for (int g : groups) ++counts[g - 1];
  for (int j = 0; j < groupCount; ++j) {
    if (counts[j] < 2) {
      throw std::invalid_argument(
          "leave-one-out tuning needs >= 2 spectra per group; group " +
          std::to_string(j + 1) + " has " + std::to_string(counts[j]));
    }
  }

  double bestAlpha = 0.0;
  int bestErrors = -1;
  for (double alpha : alphaGrid) {
    InformationMeasureConfig measure{InformationMeasureConfig::Kind::Chernoff,
                                     alpha};
    int errors = 0;
    for (size_t i = 0; i < spectra.size(); ++i) {
      std::vector<GroupSpectrumTemplate> templates = full;
      GroupSpectrumTemplate& own = templates[groups[i] - 1];
      const int count = counts[groups[i] - 1];
      for (size_t m = 0; m < own.values.size(); ++m) {
        own.values[m] =
            (own.values[m] * count - spectra[i].values[m]) / (count - 1);
      }
      if (classify_information(spectra[i], templates, measure) != groups[i]) {
        ++errors;
      }
    }
    const bool better =
        bestErrors < 0 || errors < bestErrors ||
        (errors == bestErrors &&
         std::abs(alpha - 0.5) < std::abs(bestAlpha - 0.5));
    if (better) {
      bestErrors = errors;
      bestAlpha = alpha;
    }
  }
  return bestAlpha;
}

double tune_chernoff_alpha(const std::vector<TimeSeriesEpoch>& epochs,
                           const std::vector<double>& alphaGrid, int span) {
  if (epochs.empty()) {
    throw std::invalid_argument("no epochs given");
  }
  std::vector<SpectrumEstimate> spectra;
  std::vector<int> groups;
  spectra.reserve(epochs.size());
  for (const TimeSeriesEpoch& epoch : epochs) {
    if (!epoch.group) {
      throw std::invalid_argument("epoch '" + epoch.id +
                                  "' is unlabeled; tuning requires groups");
    }
    spectra.push_back(baseline_spectrum(epoch, span));
    groups.push_back(*epoch.group);
  }
  return tune_chernoff_alpha(spectra, groups, alphaGrid);
}

}  // namespace cepdisc
