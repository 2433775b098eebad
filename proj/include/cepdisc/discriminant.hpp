#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cepdisc/cepstral.hpp"
#include "cepdisc/errors.hpp"

namespace cepdisc {

/// Fitted discriminant: Q <= J-1 weight vectors maximizing the ratio of
/// between-group to pooled within-group variation of the cepstral
/// coefficients. Weight vectors satisfy y_q' pooledWithin y_r = 1{q=r}.
struct DiscriminantModel {
  int truncation = 0;  ///< L
  int groupCount = 0;  ///< J
  int components = 0;  ///< Q

  Eigen::VectorXd priors;           ///< J, summing to one
  Eigen::MatrixXd groupMeans;       ///< J x L
  Eigen::MatrixXd pooledWithin;     ///< L x L
  Eigen::MatrixXd between;          ///< L x L
  Eigen::MatrixXd weights;          ///< L x Q, column q-1 holds y_q
  Eigen::VectorXd eigenvalues;      ///< Q, decreasing
  Eigen::MatrixXd groupMeanScores;  ///< J x Q
};

/// Eigenvalue-ratio threshold below which the pooled within-group covariance
/// is treated as singular, and below which trailing discriminant directions
/// are dropped.
inline constexpr double kEigenvalueRatioFloor = 1e-10;

/// Fits the discriminant. Group priors default to the sample proportions
/// n_j/n; an override must hold J positive entries (normalized internally).
/// Throws IllConditionedError, naming the eigenvalue ratio, when the pooled
/// within-group covariance is numerically singular.
DiscriminantModel fit_discriminant(
    const LabeledCepstralCorpus& corpus,
    const std::optional<std::vector<double>>& priors = std::nullopt);

/// Discriminant scores d_q = y_q' c, q = 1..Q. The vector length must equal
/// the model truncation.
Eigen::VectorXd discriminant_scores(const DiscriminantModel& model,
                                    const CepstralVector& vector);

/// Log-spectral weight function xi_q(lambda) = y_q0 + sum_l y_ql sqrt(2)
/// cos(2 pi lambda l), sampled at lambda = g/gridSize, g = 0..gridSize-1.
/// q is 1-based.
std::vector<double> weight_function(const DiscriminantModel& model, int q,
                                    int gridSize);

struct ClassificationResult {
  int predictedGroup = 0;  ///< 1-based
  std::vector<double> perGroupObjective;
  std::vector<double> scores;  ///< d_1 .. d_Q of the classified vector
  bool tie = false;            ///< another group achieved the same objective
  bool priorsOnly = false;     ///< Q = 0: only the prior terms discriminate
};

/// Assigns to the group minimizing sum_q (d_q - mu_jq)^2 - 2 log prior_j.
/// Exact ties go to the smaller group index and are flagged.
ClassificationResult classify(const DiscriminantModel& model,
                              const CepstralVector& vector);

struct CvCurveEntry {
  int truncation = 0;
  int misclassified = 0;
  bool valid = true;  ///< false when some held-out refit was singular
};

struct CvSelection {
  int bestTruncation = 0;
  std::vector<CvCurveEntry> curve;  ///< in candidate order
};

/// Leave-one-out selection of the truncation point over `candidates`
/// (coefficients are computed once at the largest candidate and truncated).
/// Ties prefer the smaller L. Requires every candidate to satisfy
/// L <= min(floor(N/2)+1, n-J-1) and every group to hold >= 3 epochs.
CvSelection select_truncation_cv(const std::vector<TimeSeriesEpoch>& epochs,
                                 const EstimatorConfig& config,
                                 const std::vector<int>& candidates);

/// Same sweep over an existing corpus; candidates must not exceed its L.
CvSelection select_truncation_cv(const LabeledCepstralCorpus& corpus,
                                 const std::vector<int>& candidates);

/// Leave-one-out predictions at a fixed truncation: element i classifies
/// vector i with the model fitted on all other vectors.
std::vector<ClassificationResult> loo_classify(
    const LabeledCepstralCorpus& corpus, int truncation);

}  // namespace cepdisc
