#include "cepdisc/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>

#include "cepdisc/baselines.hpp"
#include "cepdisc/cepstral.hpp"
#include "cepdisc/discriminant.hpp"
#include "cepdisc/spectral.hpp"

namespace cepdisc {

bool ar2_is_stationary(double phi1, double phi2) {
  return phi2 > -1.0 && phi1 + phi2 < 1.0 && phi2 - phi1 < 1.0;
}

void validate(const Ar2GroupSpec& spec) {
  if (spec.phi1Low > spec.phi1High || spec.phi2Low > spec.phi2High ||
      spec.sigma2Low > spec.sigma2High) {
    throw std::invalid_argument("group spec ranges must have low <= high");
  }
  if (!(spec.sigma2Low > 0.0)) {
    throw std::invalid_argument("innovation variance must be positive");
  }
  for (double phi1 : {spec.phi1Low, spec.phi1High}) {
    for (double phi2 : {spec.phi2Low, spec.phi2High}) {
      if (!ar2_is_stationary(phi1, phi2)) {
        throw std::invalid_argument(
            "AR(2) box corner (phi1=" + std::to_string(phi1) +
            ", phi2=" + std::to_string(phi2) + ") is not stationary");
      }
    }
  }
}

namespace {

double draw_uniform(std::mt19937_64& rng, double low, double high) {
  if (low == high) return low;
  return std::uniform_real_distribution<double>(low, high)(rng);
}

std::string epoch_id(const char* kind, int group, int index) {
  std::string id = kind;
  if (group > 0) id += "-g" + std::to_string(group);
  return id + "-" + std::to_string(index + 1);
}

}  // namespace

std::vector<TimeSeriesEpoch> gen_conditional_ma1(double sigma2,
                                                 double thetaLow,
                                                 double thetaHigh, int count,
                                                 int length,
                                                 std::mt19937_64& rng,
                                                 int group) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw std::invalid_argument("innovation variance must be positive");
  }
  if (thetaLow < 0.0 || thetaLow > thetaHigh || thetaHigh > 1.0) {
    throw std::invalid_argument(
        "theta range must satisfy 0 <= low <= high <= 1");
  }
  if (count < 1) throw std::invalid_argument("replicate count must be >= 1");
  if (length < 8) throw std::invalid_argument("epoch length must be >= 8");

  std::normal_distribution<double> gauss(0.0, std::sqrt(sigma2));
  std::vector<TimeSeriesEpoch> epochs(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double theta = draw_uniform(rng, thetaLow, thetaHigh);
    TimeSeriesEpoch& epoch = epochs[i];
    epoch.id = epoch_id("ma1", group, i);
    if (group > 0) epoch.group = group;
    epoch.values.resize(static_cast<size_t>(length));
    double previous = gauss(rng);
    for (int t = 0; t < length; ++t) {
      const double innovation = gauss(rng);
      epoch.values[t] = innovation + theta * previous;
      previous = innovation;
    }
  }
  return epochs;
}

std::vector<TimeSeriesEpoch> gen_conditional_ar2(const Ar2GroupSpec& spec,
                                                 int count, int length,
                                                 std::mt19937_64& rng,
                                                 int group) {
  validate(spec);
  if (count < 1) throw std::invalid_argument("replicate count must be >= 1");
  if (length < 8) throw std::invalid_argument("epoch length must be >= 8");

  constexpr int kBurnIn = 500;
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<TimeSeriesEpoch> epochs(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double phi1 = draw_uniform(rng, spec.phi1Low, spec.phi1High);
    const double phi2 = draw_uniform(rng, spec.phi2Low, spec.phi2High);
    const double sigma =
        std::sqrt(draw_uniform(rng, spec.sigma2Low, spec.sigma2High));
    TimeSeriesEpoch& epoch = epochs[i];
    epoch.id = epoch_id("ar2", group, i);
    if (group > 0) epoch.group = group;
    epoch.values.resize(static_cast<size_t>(length));
    double lag1 = 0.0, lag2 = 0.0;
    for (int t = -kBurnIn; t < length; ++t) {
      const double x = phi1 * lag1 + phi2 * lag2 + sigma * gauss(rng);
      lag2 = lag1;
      lag1 = x;
      if (t >= 0) epoch.values[t] = x;
    }
  }
  return epochs;
}

std::vector<double> ar2_log_spectrum(double phi1, double phi2, double sigma2,
                                     int gridSize) {
  if (!ar2_is_stationary(phi1, phi2)) {
    throw std::invalid_argument("AR(2) coefficients are not stationary");
  }
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("innovation variance must be positive");
  }
  if (gridSize < 1) throw std::invalid_argument("grid size must be >= 1");
  std::vector<double> values(static_cast<size_t>(gridSize));
  const double logSigma2 = std::log(sigma2);
  for (int g = 0; g < gridSize; ++g) {
    const double lambda = static_cast<double>(g) / gridSize;
    const std::complex<double> z =
        std::polar(1.0, -2.0 * std::numbers::pi * lambda);
    const std::complex<double> transfer = 1.0 - phi1 * z - phi2 * z * z;
    values[g] = logSigma2 - std::log(std::norm(transfer));
  }
  return values;
}

std::vector<double> analytic_ma1_cepstrum(double theta, double sigma2,
                                          int truncation) {
  if (theta < 0.0 || theta >= 1.0) {
    throw std::invalid_argument(
        "analytic MA(1) cepstrum requires 0 <= theta < 1 (invertibility)");
  }
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("innovation variance must be positive");
  }
  if (truncation < 1) throw std::invalid_argument("truncation must be >= 1");
  std::vector<double> cepstrum(static_cast<size_t>(truncation));
  cepstrum[0] = std::log(sigma2);
  double power = 1.0;
  for (int l = 1; l < truncation; ++l) {
    power *= theta;
    const double sign = l % 2 == 1 ? 1.0 : -1.0;
    cepstrum[l] = sign * std::numbers::sqrt2 * power / l;
  }
  return cepstrum;
}

Ma1GroupMoments analytic_ma1_group_moments(double thetaLow, double thetaHigh,
                                           double sigma2, int truncation) {
  if (thetaLow < 0.0 || thetaLow > thetaHigh || thetaHigh > 1.0 ||
      (thetaLow == thetaHigh && thetaHigh >= 1.0)) {
    throw std::invalid_argument(
        "theta range must satisfy 0 <= low <= high <= 1");
  }
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("innovation variance must be positive");
  }
  if (truncation < 1) throw std::invalid_argument("truncation must be >= 1");

  // Moments of theta under the uniform law on [low, high].
  const auto thetaMoment = [&](int k) {
    if (thetaLow == thetaHigh) return std::pow(thetaLow, k);
    return (std::pow(thetaHigh, k + 1) - std::pow(thetaLow, k + 1)) /
           ((thetaHigh - thetaLow) * (k + 1));
  };

  Ma1GroupMoments moments;
  moments.mean = Eigen::VectorXd::Zero(truncation);
  moments.covariance = Eigen::MatrixXd::Zero(truncation, truncation);
  moments.mean[0] = std::log(sigma2);
  for (int l = 1; l < truncation; ++l) {
    const double sign = l % 2 == 1 ? 1.0 : -1.0;
    moments.mean[l] = sign * std::numbers::sqrt2 * thetaMoment(l) / l;
  }
  for (int l = 1; l < truncation; ++l) {
    for (int m = 1; m < truncation; ++m) {
      const double sign = (l + m) % 2 == 0 ? 1.0 : -1.0;
      moments.covariance(l, m) =
          2.0 * sign *
          (thetaMoment(l + m) - thetaMoment(l) * thetaMoment(m)) /
          (static_cast<double>(l) * m);
    }
  }
  return moments;
}

std::string to_string(Method method) {
  switch (method) {
    case Method::CepstralMultitaper:
      return "cepstral-multitaper";
    case Method::CepstralDirect:
      return "cepstral-direct";
    case Method::CepstralSmoothed:
      return "cepstral-smoothed";
    case Method::KullbackLeibler:
      return "kl";
    case Method::Chernoff:
      return "chernoff";
  }
  throw std::invalid_argument("unknown method");
}

Method method_from_string(const std::string& name) {
  for (Method method : all_methods()) {
    if (to_string(method) == name) return method;
  }
  throw std::invalid_argument(
      "unknown method '" + name +
      "' (expected cepstral-multitaper, cepstral-direct, cepstral-smoothed, "
      "kl or chernoff)");
}

std::vector<Method> all_methods() {
  return {Method::CepstralMultitaper, Method::CepstralDirect,
          Method::CepstralSmoothed, Method::KullbackLeibler, Method::Chernoff};
}

std::vector<Ar2GroupSpec> default_group_specs(double sigma2Low,
                                              double sigma2High) {
  std::vector<Ar2GroupSpec> specs(3);
  specs[0] = {0.05, 0.7, -0.12, -0.06, sigma2Low, sigma2High};
  specs[1] = {0.01, 1.2, -0.36, -0.25, sigma2Low, sigma2High};
  specs[2] = {0.12, 1.5, -0.75, -0.56, sigma2Low, sigma2High};
  return specs;
}

void validate(const ExperimentConfig& config) {
  if (config.groupSpecs.size() < 2) {
    throw std::invalid_argument("experiment needs at least two group specs");
  }
  for (const Ar2GroupSpec& spec : config.groupSpecs) validate(spec);
  if (config.epochsPerGroup < 3) {
    throw std::invalid_argument("training needs >= 3 epochs per group");
  }
  if (config.testPerGroup < 1) {
    throw std::invalid_argument("test sets need >= 1 epoch per group");
  }
  if (config.length < 16) {
    throw std::invalid_argument("epoch length must be >= 16");
  }
  if (config.reps < 1) throw std::invalid_argument("rep count must be >= 1");
  if (config.methods.empty()) {
    throw std::invalid_argument("no methods requested");
  }
  if (std::set<Method>(config.methods.begin(), config.methods.end()).size() !=
      config.methods.size()) {
    throw std::invalid_argument("duplicate method requested");
  }
  if (config.truncationCandidates.empty()) {
    throw std::invalid_argument("no truncation candidates given");
  }
  const int groups = static_cast<int>(config.groupSpecs.size());
  const int trainTotal = groups * config.epochsPerGroup;
  const int bound = std::min(config.length / 2 + 1, trainTotal - groups - 1);
  for (int candidate : config.truncationCandidates) {
    if (candidate < 1 || candidate > bound) {
      throw std::invalid_argument(
          "truncation candidate " + std::to_string(candidate) +
          " outside 1.." + std::to_string(bound));
    }
  }
  if (config.tapers < 1) {
    throw std::invalid_argument("taper count must be >= 1");
  }
  if (config.threads < 0) {
    throw std::invalid_argument("thread count must be >= 0");
  }
}

namespace {

// Everything a replicate derives from one epoch, shared across methods.
struct EpochFeatures {
  int group = 0;
  CepstralVector multitaper;    // at the largest candidate truncation
  CepstralVector direct;
  CepstralVector smoothed;
  SpectrumEstimate spectrum;    // GCV-smoothed periodogram, linear scale
};

bool uses(const std::vector<Method>& methods, Method wanted) {
  return std::find(methods.begin(), methods.end(), wanted) != methods.end();
}

EpochFeatures compute_features(const TimeSeriesEpoch& epoch,
                               const TaperBank& bank, int maxTruncation,
                               bool needMultitaper, bool needDirect,
                               bool needSmoothedCepstra, bool needSpectrum) {
  EpochFeatures features;
  features.group = epoch.group.value_or(0);
  const auto cepstra = [&](const LogSpectrumEstimate& estimate) {
    CepstralVector v = cepstral_coefficients(estimate, maxTruncation);
    v.group = epoch.group;
    v.id = epoch.id;
    return v;
  };
  if (needMultitaper) {
    features.multitaper = cepstra(multitaper_log_spectrum(epoch, bank));
  }
  if (needDirect) {
    features.direct = cepstra(direct_log_spectrum(epoch));
  }
  if (needSmoothedCepstra || needSpectrum) {
    // One GCV pass serves both the smoothed-cepstra route and the
    // information-measure baselines.
    SpectrumEstimate spectrum;
    spectrum.values = smoothed_periodogram(epoch);
    spectrum.sourceLength = epoch.length();
    if (needSmoothedCepstra) {
      LogSpectrumEstimate logged;
      logged.values.resize(spectrum.values.size());
      for (size_t m = 0; m < spectrum.values.size(); ++m) {
        if (!(spectrum.values[m] > 0.0)) {
          throw DegenerateSpectrumError(
              "smoothed periodogram of epoch '" + epoch.id +
              "' is not positive at frequency bin " + std::to_string(m));
        }
        logged.values[m] = std::log(spectrum.values[m]);
      }
      logged.sourceLength = epoch.length();
      logged.estimator = SpectrumEstimatorKind::Smoothed;
      features.smoothed = cepstra(logged);
    }
    if (needSpectrum) features.spectrum = std::move(spectrum);
  }
  return features;
}

// Percent of test epochs classified correctly by the cepstral route.
double cepstral_rate(const std::vector<EpochFeatures>& train,
                     const std::vector<EpochFeatures>& test,
                     const CepstralVector EpochFeatures::*member,
                     const std::vector<int>& candidates) {
  std::vector<CepstralVector> vectors;
  vectors.reserve(train.size());
  for (const EpochFeatures& f : train) vectors.push_back(f.*member);
  const LabeledCepstralCorpus corpus = make_labeled_corpus(std::move(vectors));
  const CvSelection selection = select_truncation_cv(corpus, candidates);
  const DiscriminantModel model = fit_discriminant(
      truncate_corpus(corpus, selection.bestTruncation));
  int correct = 0;
  for (const EpochFeatures& f : test) {
    CepstralVector v = f.*member;
    v.coefficients.conservativeResize(selection.bestTruncation);
    if (classify(model, v).predictedGroup == f.group) ++correct;
  }
  return 100.0 * correct / static_cast<double>(test.size());
}

// Percent of test epochs classified correctly by an information measure.
double information_rate(const std::vector<EpochFeatures>& train,
                        const std::vector<EpochFeatures>& test,
                        bool chernoff) {
  std::vector<SpectrumEstimate> spectra;
  std::vector<int> groups;
  spectra.reserve(train.size());
  for (const EpochFeatures& f : train) {
    spectra.push_back(f.spectrum);
    groups.push_back(f.group);
  }
  const std::vector<GroupSpectrumTemplate> templates =
      group_templates(spectra, groups);
  InformationMeasureConfig measure;
  if (chernoff) {
    measure.kind = InformationMeasureConfig::Kind::Chernoff;
    measure.alpha = tune_chernoff_alpha(spectra, groups);
  }
  int correct = 0;
  for (const EpochFeatures& f : test) {
    if (classify_information(f.spectrum, templates, measure) == f.group) {
      ++correct;
    }
  }
  return 100.0 * correct / static_cast<double>(test.size());
}

std::vector<double> run_replicate(const ExperimentConfig& config,
                                  const TaperBank& bank, int rep) {
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                    static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(rep)};
  std::mt19937_64 rng(seq);

  const int groups = static_cast<int>(config.groupSpecs.size());
  std::vector<TimeSeriesEpoch> trainEpochs, testEpochs;
  for (int j = 0; j < groups; ++j) {
    std::vector<TimeSeriesEpoch> drawn =
        gen_conditional_ar2(config.groupSpecs[j], config.epochsPerGroup,
                            config.length, rng, j + 1);
    trainEpochs.insert(trainEpochs.end(),
                       std::make_move_iterator(drawn.begin()),
                       std::make_move_iterator(drawn.end()));
  }
  for (int j = 0; j < groups; ++j) {
    std::vector<TimeSeriesEpoch> drawn =
        gen_conditional_ar2(config.groupSpecs[j], config.testPerGroup,
                            config.length, rng, j + 1);
    testEpochs.insert(testEpochs.end(), std::make_move_iterator(drawn.begin()),
                      std::make_move_iterator(drawn.end()));
  }

  const bool needMultitaper = uses(config.methods, Method::CepstralMultitaper);
  const bool needDirect = uses(config.methods, Method::CepstralDirect);
  const bool needSmoothed = uses(config.methods, Method::CepstralSmoothed);
  const bool needSpectrum = uses(config.methods, Method::KullbackLeibler) ||
                            uses(config.methods, Method::Chernoff);
  const int maxTruncation =
      *std::max_element(config.truncationCandidates.begin(),
                        config.truncationCandidates.end());

  const double failed = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> rates(config.methods.size(), failed);

  std::vector<EpochFeatures> train, test;
  try {
    train.reserve(trainEpochs.size());
    test.reserve(testEpochs.size());
    for (const TimeSeriesEpoch& epoch : trainEpochs) {
      train.push_back(compute_features(epoch, bank, maxTruncation,
                                       needMultitaper, needDirect,
                                       needSmoothed, needSpectrum));
    }
    for (const TimeSeriesEpoch& epoch : testEpochs) {
      test.push_back(compute_features(epoch, bank, maxTruncation,
                                      needMultitaper, needDirect, needSmoothed,
                                      needSpectrum));
    }
  } catch (const DegenerateSpectrumError&) {
    return rates;  // every method fails on this replicate
  }

  for (size_t k = 0; k < config.methods.size(); ++k) {
    try {
      switch (config.methods[k]) {
        case Method::CepstralMultitaper:
          rates[k] = cepstral_rate(train, test, &EpochFeatures::multitaper,
                                   config.truncationCandidates);
          break;
        case Method::CepstralDirect:
          rates[k] = cepstral_rate(train, test, &EpochFeatures::direct,
                                   config.truncationCandidates);
          break;
        case Method::CepstralSmoothed:
          rates[k] = cepstral_rate(train, test, &EpochFeatures::smoothed,
                                   config.truncationCandidates);
          break;
        case Method::KullbackLeibler:
          rates[k] = information_rate(train, test, false);
          break;
        case Method::Chernoff:
          rates[k] = information_rate(train, test, true);
          break;
      }
    } catch (const IllConditionedError&) {
    } catch (const DegenerateSpectrumError&) {
    }
  }
  return rates;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  const TaperBank bank = sine_tapers(config.length, config.tapers);

  std::vector<std::vector<double>> repRates(
      static_cast<size_t>(config.reps));
  std::atomic<int> nextRep{0};
  std::exception_ptr firstError;
  std::mutex errorMutex;

  int threadCount = config.threads;
  if (threadCount <= 0) {
    threadCount = static_cast<int>(std::thread::hardware_concurrency());
  }
  threadCount = std::clamp(threadCount, 1, config.reps);

  const auto worker = [&]() {
    for (;;) {
      const int rep = nextRep.fetch_add(1);
      if (rep >= config.reps) return;
      try {
        repRates[rep] = run_replicate(config, bank, rep);
      } catch (...) {
        std::lock_guard<std::mutex> lock(errorMutex);
        if (!firstError) firstError = std::current_exception();
        return;
      }
    }
  };

  if (threadCount == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threadCount));
    for (int i = 0; i < threadCount; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (firstError) std::rethrow_exception(firstError);

  ExperimentReport report;
  report.config = config;
  for (size_t k = 0; k < config.methods.size(); ++k) {
    MethodSummary summary;
    summary.method = config.methods[k];
    summary.repRates.resize(static_cast<size_t>(config.reps));
    double sum = 0.0;
    int successes = 0;
    for (int rep = 0; rep < config.reps; ++rep) {
      const double rate = repRates[rep][k];
      summary.repRates[rep] = rate;
      if (std::isnan(rate)) {
        ++summary.failedReps;
      } else {
        sum += rate;
        ++successes;
      }
    }
    if (successes > 0) {
      summary.meanRate = sum / successes;
      if (successes > 1) {
        double ss = 0.0;
        for (double rate : summary.repRates) {
          if (!std::isnan(rate)) {
            ss += (rate - summary.meanRate) * (rate - summary.meanRate);
          }
        }
        summary.sdRate = std::sqrt(ss / (successes - 1));
      }
    }
    report.summaries.push_back(std::move(summary));
  }
  return report;
}

}  // namespace cepdisc
