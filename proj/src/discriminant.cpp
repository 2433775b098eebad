#include "cepdisc/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cepdisc {

namespace {

Eigen::VectorXd resolve_priors(const LabeledCepstralCorpus& corpus,
                               const std::optional<std::vector<double>>& given) {
  const int groups = corpus.groupCount;
  Eigen::VectorXd priors(groups);
  if (!given) {
    for (int j = 0; j < groups; ++j) {
      priors[j] =
          static_cast<double>(corpus.groupSizes[j]) / corpus.size();
    }
    return priors;
  }
  if (static_cast<int>(given->size()) != groups) {
    throw std::invalid_argument("prior vector has " +
                                std::to_string(given->size()) +
                                " entries for " + std::to_string(groups) +
                                " groups");
  }
  double total = 0.0;
  for (int j = 0; j < groups; ++j) {
    const double p = (*given)[j];
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("group priors must be positive and finite");
    }
    priors[j] = p;
    total += p;
  }
  priors /= total;
  return priors;
}

std::string format_ratio(double ratio) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << ratio;
  return out.str();
}

// Corpus minus vector `skip`, truncated to `truncation` coefficients.
LabeledCepstralCorpus holdout_corpus(const LabeledCepstralCorpus& corpus,
                                     int skip, int truncation) {
  std::vector<CepstralVector> kept;
  kept.reserve(corpus.vectors.size() - 1);
  for (int i = 0; i < corpus.size(); ++i) {
    if (i == skip) continue;
    CepstralVector v = corpus.vectors[i];
    v.coefficients.conservativeResize(truncation);
    kept.push_back(std::move(v));
  }
  return make_labeled_corpus(std::move(kept));
}

}  // namespace

DiscriminantModel fit_discriminant(
    const LabeledCepstralCorpus& corpus,
    const std::optional<std::vector<double>>& priors) {
  const int truncation = corpus.truncation;
  const int groups = corpus.groupCount;

  DiscriminantModel model;
  model.truncation = truncation;
  model.groupCount = groups;
  model.priors = resolve_priors(corpus, priors);

  model.groupMeans = Eigen::MatrixXd::Zero(groups, truncation);
  for (const CepstralVector& v : corpus.vectors) {
    model.groupMeans.row(*v.group - 1) += v.coefficients.transpose();
  }
  for (int j = 0; j < groups; ++j) {
    model.groupMeans.row(j) /= corpus.groupSizes[j];
  }

  // Pooled within-group covariance: prior-weighted average of the per-group
  // sample covariances (divisor n_j - 1).
  model.pooledWithin = Eigen::MatrixXd::Zero(truncation, truncation);
  {
    std::vector<Eigen::MatrixXd> scatter(
        groups, Eigen::MatrixXd::Zero(truncation, truncation));
    for (const CepstralVector& v : corpus.vectors) {
      const int j = *v.group - 1;
      const Eigen::VectorXd centered =
          v.coefficients - model.groupMeans.row(j).transpose();
      scatter[j] += centered * centered.transpose();
    }
    for (int j = 0; j < groups; ++j) {
      model.pooledWithin +=
          model.priors[j] / (corpus.groupSizes[j] - 1) * scatter[j];
    }
  }

  // Between-group covariance of the group means around the prior-weighted
  // overall mean.
  const Eigen::VectorXd overallMean =
      model.groupMeans.transpose() * model.priors;
  model.between = Eigen::MatrixXd::Zero(truncation, truncation);
  for (int j = 0; j < groups; ++j) {
    const Eigen::VectorXd centered =
        model.groupMeans.row(j).transpose() - overallMean;
    model.between += model.priors[j] * centered * centered.transpose();
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> withinEigen(
      model.pooledWithin, Eigen::EigenvaluesOnly);
  const double largest = withinEigen.eigenvalues()(truncation - 1);
  const double smallest = withinEigen.eigenvalues()(0);
  const double ratio = largest > 0.0 ? smallest / largest : 0.0;
  if (!(ratio > kEigenvalueRatioFloor)) {
    throw IllConditionedError(
        "pooled within-group covariance is numerically singular: eigenvalue "
        "ratio " +
            format_ratio(ratio) + " is at or below " +
            format_ratio(kEigenvalueRatioFloor) +
            " (reduce L or provide more replicates)",
        ratio);
  }

  // Reduce the generalized problem between y = tau pooledWithin y through the
  // Cholesky factor pooledWithin = C C': the ordinary symmetric problem in
  // u = C' y is C^-1 between C^-T u = tau u.
  Eigen::LLT<Eigen::MatrixXd> cholesky(model.pooledWithin);
  if (cholesky.info() != Eigen::Success) {
    throw IllConditionedError(
        "pooled within-group covariance has no Cholesky factorization "
        "(eigenvalue ratio " +
            format_ratio(ratio) + ")",
        ratio);
  }
  const Eigen::MatrixXd half =
      cholesky.matrixL().solve(model.between);  // C^-1 between
  Eigen::MatrixXd reduced =
      cholesky.matrixL().solve(half.transpose()).transpose();
  reduced = ((reduced + reduced.transpose()) / 2.0).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> reducedEigen(reduced);
  if (reducedEigen.info() != Eigen::Success) {
    throw IllConditionedError("discriminant eigensolver failed to converge",
                              ratio);
  }

  const int maxComponents = std::min(groups - 1, truncation);
  const double top = reducedEigen.eigenvalues()(truncation - 1);
  int components = 0;
  if (top > 0.0) {
    for (int q = 0; q < maxComponents; ++q) {
      const double tau = reducedEigen.eigenvalues()(truncation - 1 - q);
      if (tau > kEigenvalueRatioFloor * top) ++components;
    }
  }
  model.components = components;

  model.weights.resize(truncation, components);
  model.eigenvalues.resize(components);
  for (int q = 0; q < components; ++q) {
    model.eigenvalues[q] = reducedEigen.eigenvalues()(truncation - 1 - q);
    Eigen::VectorXd weight = cholesky.matrixU().solve(
        reducedEigen.eigenvectors().col(truncation - 1 - q));
    weight /= std::sqrt(weight.dot(model.pooledWithin * weight));
    int largestEntry = 0;
    for (int l = 1; l < truncation; ++l) {
      if (std::abs(weight[l]) > std::abs(weight[largestEntry])) {
        largestEntry = l;
      }
    }
    if (weight[largestEntry] < 0.0) weight = -weight;
    model.weights.col(q) = weight;
  }
  model.groupMeanScores = model.groupMeans * model.weights;
  return model;
}

Eigen::VectorXd discriminant_scores(const DiscriminantModel& model,
                                    const CepstralVector& vector) {
  if (vector.size() != model.truncation) {
    throw std::invalid_argument(
        "cepstral vector has length " + std::to_string(vector.size()) +
        " but the model uses L=" + std::to_string(model.truncation));
  }
  return model.weights.transpose() * vector.coefficients;
}

std::vector<double> weight_function(const DiscriminantModel& model, int q,
                                    int gridSize) {
  if (q < 1 || q > model.components) {
    throw std::invalid_argument("discriminant index " + std::to_string(q) +
                                " outside 1.." +
                                std::to_string(model.components));
  }
  if (gridSize < 1) {
    throw std::invalid_argument("grid size must be >= 1");
  }
  const Eigen::VectorXd& weight = model.weights.col(q - 1);
  std::vector<double> values(static_cast<size_t>(gridSize));
  for (int g = 0; g < gridSize; ++g) {
    const double lambda = static_cast<double>(g) / gridSize;
    double acc = weight[0];
    for (int l = 1; l < model.truncation; ++l) {
      acc += weight[l] * std::numbers::sqrt2 *
             std::cos(2.0 * std::numbers::pi * lambda * l);
    }
    values[g] = acc;
  }
  return values;
}

ClassificationResult classify(const DiscriminantModel& model,
                              const CepstralVector& vector) {
  const Eigen::VectorXd scores = discriminant_scores(model, vector);
  ClassificationResult result;
  result.scores.assign(scores.data(), scores.data() + scores.size());
  result.priorsOnly = model.components == 0;
  result.perGroupObjective.resize(static_cast<size_t>(model.groupCount));
  for (int j = 0; j < model.groupCount; ++j) {
    double distance = 0.0;
    for (int q = 0; q < model.components; ++q) {
      const double diff = scores[q] - model.groupMeanScores(j, q);
      distance += diff * diff;
    }
    result.perGroupObjective[j] = distance - 2.0 * std::log(model.priors[j]);
  }
  int best = 0;
  for (int j = 1; j < model.groupCount; ++j) {
    if (result.perGroupObjective[j] < result.perGroupObjective[best]) best = j;
  }
  result.predictedGroup = best + 1;
  for (int j = 0; j < model.groupCount; ++j) {
    if (j != best &&
        result.perGroupObjective[j] == result.perGroupObjective[best]) {
      result.tie = true;
      break;
    }
  }
  return result;
}

CvSelection select_truncation_cv(const LabeledCepstralCorpus& corpus,
                                 const std::vector<int>& candidates) {
  if (candidates.empty()) {
    throw std::invalid_argument("no truncation candidates given");
  }
  const int n = corpus.size();
  const int bound = n - corpus.groupCount - 1;
  for (int size : corpus.groupSizes) {
    if (size < 3) {
      throw std::invalid_argument(
          "cross-validation needs at least 3 epochs per group");
    }
  }
  std::set<int> unique(candidates.begin(), candidates.end());
  for (int candidate : unique) {
    if (candidate < 1 || candidate > corpus.truncation ||
        candidate > bound) {
      throw std::invalid_argument(
          "truncation candidate " + std::to_string(candidate) +
          " outside 1..min(L=" + std::to_string(corpus.truncation) +
          ", n-J-1=" + std::to_string(bound) + ")");
    }
  }

  CvSelection selection;
  for (int candidate : unique) {
    CvCurveEntry entry;
    entry.truncation = candidate;
    for (int i = 0; i < n && entry.valid; ++i) {
      try {
        const DiscriminantModel model =
            fit_discriminant(holdout_corpus(corpus, i, candidate));
        CepstralVector held = corpus.vectors[i];
        held.coefficients.conservativeResize(candidate);
        if (classify(model, held).predictedGroup != *held.group) {
          ++entry.misclassified;
        }
      } catch (const IllConditionedError&) {
        entry.valid = false;
      }
    }
    selection.curve.push_back(entry);
  }

  int best = -1;
  for (size_t k = 0; k < selection.curve.size(); ++k) {
    const CvCurveEntry& entry = selection.curve[k];
    if (!entry.valid) continue;
    if (best < 0 ||
        entry.misclassified < selection.curve[best].misclassified) {
      best = static_cast<int>(k);
    }
  }
  if (best < 0) {
    throw IllConditionedError(
        "every truncation candidate produced a singular held-out fit", 0.0);
  }
  selection.bestTruncation = selection.curve[best].truncation;
  return selection;
}

CvSelection select_truncation_cv(const std::vector<TimeSeriesEpoch>& epochs,
                                 const EstimatorConfig& config,
                                 const std::vector<int>& candidates) {
  if (candidates.empty()) {
    throw std::invalid_argument("no truncation candidates given");
  }
  if (epochs.empty()) {
    throw std::invalid_argument("no epochs given");
  }
  const int n = epochs.front().length();
  const int gridBound = n / 2 + 1;
  const int largest = *std::max_element(candidates.begin(), candidates.end());
  if (largest > gridBound) {
    throw std::invalid_argument(
        "truncation candidate " + std::to_string(largest) +
        " exceeds floor(N/2)+1 = " + std::to_string(gridBound));
  }
  const LabeledCepstralCorpus corpus =
      corpus_from_epochs(epochs, config, largest);
  return select_truncation_cv(corpus, candidates);
}

std::vector<ClassificationResult> loo_classify(
    const LabeledCepstralCorpus& corpus, int truncation) {
  if (truncation < 1 || truncation > corpus.truncation) {
    throw std::invalid_argument(
        "truncation " + std::to_string(truncation) +
        " outside 1..L=" + std::to_string(corpus.truncation));
  }
  std::vector<ClassificationResult> results;
  results.reserve(corpus.vectors.size());
  for (int i = 0; i < corpus.size(); ++i) {
    const DiscriminantModel model =
        fit_discriminant(holdout_corpus(corpus, i, truncation));
    CepstralVector held = corpus.vectors[i];
    held.coefficients.conservativeResize(truncation);
    results.push_back(classify(model, held));
  }
  return results;
}

}  // namespace cepdisc
