#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cepdisc/types.hpp"

namespace cepdisc {

/// True whether the AR(2) polynomial with coefficients (phi1, phi2) is causal
/// stationary: phi2 > -1, phi2 < 1 - phi1 and phi2 < 1 + phi1.
bool ar2_is_stationary(double phi1, double phi2);

/// Group law for conditionally simulated AR(2) epochs: each replicate draws
/// its own (phi1, phi2, sigma2) uniformly from the box before generating.
struct Ar2GroupSpec {
  double phi1Low = 0.0, phi1High = 0.0;
  double phi2Low = 0.0, phi2High = 0.0;
  double sigma2Low = 1.0, sigma2High = 1.0;
};

/// Throws std::invalid_argument unless every corner of the (phi1, phi2) box
/// is stationary and the sigma2 range is positive.
void validate(const Ar2GroupSpec& spec);

/// Conditional MA(1) sample: per replicate theta ~ Uniform(thetaLow,
/// thetaHigh), then X_t = e_t + theta e_{t-1} from N+1 Gaussian innovations
/// with variance sigma2. No burn-in is needed.
std::vector<TimeSeriesEpoch> gen_conditional_ma1(double sigma2,
                                                 double thetaLow,
                                                 double thetaHigh, int count,
                                                 int length,
                                                 std::mt19937_64& rng,
                                                 int group = 0);

/// Conditional AR(2) sample: per replicate (phi1, phi2, sigma2) uniform on
/// the spec box, recursion started from zeros with 500 burn-in steps.
std::vector<TimeSeriesEpoch> gen_conditional_ar2(const Ar2GroupSpec& spec,
                                                 int count, int length,
                                                 std::mt19937_64& rng,
                                                 int group = 0);

/// Log-spectrum of a fixed stationary AR(2) process on lambda = g/gridSize:
/// log sigma2 - log |1 - phi1 e^{-2 pi i lambda} - phi2 e^{-4 pi i lambda}|^2.
std::vector<double> ar2_log_spectrum(double phi1, double phi2, double sigma2,
                                     int gridSize);

/// Exact cepstral coefficients of a fixed invertible MA(1) process:
/// c_0 = log sigma2, c_l = (-1)^{l+1} sqrt(2) theta^l / l. Requires
/// 0 <= theta < 1.
std::vector<double> analytic_ma1_cepstrum(double theta, double sigma2,
                                          int truncation);

/// Population moments of the exact cepstral coefficients when theta is drawn
/// uniformly per replicate.
struct Ma1GroupMoments {
  Eigen::VectorXd mean;        ///< a_0 .. a_{L-1}
  Eigen::MatrixXd covariance;  ///< L x L; row/column 0 are zero
};

/// Moments for theta ~ Uniform(thetaLow, thetaHigh) with fixed sigma2,
/// requiring 0 <= thetaLow <= thetaHigh < 1.
Ma1GroupMoments analytic_ma1_group_moments(double thetaLow, double thetaHigh,
                                           double sigma2, int truncation);

/// Classifiers compared by the Monte Carlo study.
enum class Method {
  CepstralMultitaper,
  CepstralDirect,
  CepstralSmoothed,
  KullbackLeibler,
  Chernoff,
};

std::string to_string(Method method);
Method method_from_string(const std::string& name);
std::vector<Method> all_methods();

/// One Monte Carlo experiment: `reps` independent replications, each drawing
/// fresh training and test sets from the group specs and scoring every
/// requested method on the same data.
struct ExperimentConfig {
  std::vector<Ar2GroupSpec> groupSpecs;
  int epochsPerGroup = 50;     ///< training n_j
  int testPerGroup = 50;
  int length = 500;            ///< N
  int reps = 100;
  std::uint64_t seed = 1;
  std::vector<Method> methods = all_methods();
  std::vector<int> truncationCandidates = {2, 3, 4, 5, 6, 7, 8};
  int tapers = 7;
  int threads = 0;  ///< 0: hardware concurrency capped by reps
};

void validate(const ExperimentConfig& config);

/// The three-group conditional AR(2) design used throughout: near-white,
/// moderately peaked and strongly peaked dynamics, with a common innovation
/// variance range.
std::vector<Ar2GroupSpec> default_group_specs(double sigma2Low,
                                              double sigma2High);

struct MethodSummary {
  Method method = Method::CepstralMultitaper;
  double meanRate = 0.0;  ///< mean percent correct over successful reps
  double sdRate = 0.0;    ///< sample SD over successful reps
  std::vector<double> repRates;  ///< per rep; NaN where the rep failed
  int failedReps = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<MethodSummary> summaries;  ///< in config.methods order
};

/// Runs the experiment. Replicate r derives its own generator from
/// (config.seed, r), so reports are identical for any thread count. A rep
/// whose fit degenerates for some method is recorded as failed for that
/// method and excluded from its mean/SD.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace cepdisc
