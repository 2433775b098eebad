#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "cepdisc/cepstral.hpp"
#include "cepdisc/spectral.hpp"

using namespace cepdisc;

namespace {

TimeSeriesEpoch make_epoch(std::vector<double> values, int group = 0,
                           std::string id = "epoch") {
  TimeSeriesEpoch epoch;
  epoch.values = std::move(values);
  epoch.id = std::move(id);
  if (group > 0) epoch.group = group;
  return epoch;
}

LogSpectrumEstimate grid_estimate(std::vector<double> values) {
  LogSpectrumEstimate estimate;
  estimate.sourceLength = static_cast<int>(values.size());
  estimate.values = std::move(values);
  return estimate;
}

double ma1_log_spectrum(double theta, double lambda) {
  return std::log(1.0 + theta * theta +
                  2.0 * theta * std::cos(2.0 * M_PI * lambda));
}

LogSpectrumEstimate ma1_grid(double theta, int n) {
  std::vector<double> values(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    values[m] = ma1_log_spectrum(theta, static_cast<double>(m) / n);
  }
  return grid_estimate(std::move(values));
}

double ma1_coefficient(double theta, int ell) {
  return (ell % 2 ? 1.0 : -1.0) * std::sqrt(2.0) * std::pow(theta, ell) / ell;
}

std::vector<double> ma1_series(double theta, int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(static_cast<size_t>(n));
  double prev = normal(rng);
  for (int t = 0; t < n; ++t) {
    const double e = normal(rng);
    values[t] = e + theta * prev;
    prev = e;
  }
  return values;
}

std::vector<double> gaussian_series(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(static_cast<size_t>(n));
  for (auto& v : values) v = normal(rng);
  return values;
}

}  // namespace

TEST_CASE("flat log-spectrum has only a zero-order coefficient") {
  const CepstralVector c =
      cepstral_coefficients(grid_estimate(std::vector<double>(48, 3.25)), 10);
  REQUIRE(c.size() == 10);
  CHECK(c.coefficients[0] == doctest::Approx(3.25).epsilon(1e-14));
  for (int l = 1; l < 10; ++l) {
    CHECK(std::abs(c.coefficients[l]) < 1e-13);
  }
  CHECK(c.sourceLength == 48);
}

TEST_CASE("a pure cosine log-spectrum maps to a unit first coefficient") {
  const int n = 64;
  std::vector<double> values(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    values[m] = std::sqrt(2.0) * std::cos(2.0 * M_PI * m / n);
  }
  const CepstralVector c =
      cepstral_coefficients(grid_estimate(std::move(values)), 12);
  CHECK(std::abs(c.coefficients[0]) < 1e-12);
  CHECK(c.coefficients[1] == doctest::Approx(1.0).epsilon(1e-12));
  for (int l = 2; l < 12; ++l) {
    CHECK(std::abs(c.coefficients[l]) < 1e-12);
  }
}

TEST_CASE("exact MA(1) grids reproduce the analytic coefficient series") {
  const double theta = 0.6;
  const CepstralVector c = cepstral_coefficients(ma1_grid(theta, 4096), 11);
  CHECK(std::abs(c.coefficients[0]) < 1e-6);
  for (int l = 1; l <= 10; ++l) {
    CHECK(c.coefficients[l] ==
          doctest::Approx(ma1_coefficient(theta, l)).epsilon(1e-6));
  }
}

TEST_CASE("analytic decay bounds the MA(1) coefficients") {
  for (double theta : {0.3, 0.5, 0.9}) {
    const CepstralVector c = cepstral_coefficients(ma1_grid(theta, 2048), 13);
    for (int l = 1; l < 13; ++l) {
      CHECK(std::abs(c.coefficients[l]) <=
            std::sqrt(2.0) * std::pow(theta, l) / l + 1e-9);
    }
  }
}

TEST_CASE("truncation level is validated against the grid") {
  const LogSpectrumEstimate estimate = ma1_grid(0.5, 32);
  CHECK_THROWS_AS(cepstral_coefficients(estimate, 0), std::invalid_argument);
  CHECK_THROWS_AS(cepstral_coefficients(estimate, 18), std::invalid_argument);
  CHECK_NOTHROW(cepstral_coefficients(estimate, 17));
  CHECK_NOTHROW(cepstral_coefficients(estimate, 1));
}

TEST_CASE("adding a constant moves only the zero-order coefficient") {
  std::mt19937_64 rng(314);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = 80;
  std::vector<double> base(static_cast<size_t>(n));
  for (int m = 0; m <= n / 2; ++m) {
    base[m] = normal(rng);
    if (m >= 1 && n - m < n) base[n - m] = base[m];
  }
  std::vector<double> shifted = base;
  const double k = 2.625;
  for (auto& v : shifted) v += k;
  const CepstralVector a = cepstral_coefficients(grid_estimate(base), 9);
  const CepstralVector b = cepstral_coefficients(grid_estimate(shifted), 9);
  CHECK(b.coefficients[0] - a.coefficients[0] ==
        doctest::Approx(k).epsilon(1e-13));
  for (int l = 1; l < 9; ++l) {
    CHECK(b.coefficients[l] == doctest::Approx(a.coefficients[l]).epsilon(1e-12));
  }
}

TEST_CASE("the transform is linear in the log-spectrum") {
  const LogSpectrumEstimate f = ma1_grid(0.4, 256);
  const LogSpectrumEstimate g = ma1_grid(0.8, 256);
  const double a = 1.75, b = -0.5;
  std::vector<double> mix(static_cast<size_t>(256));
  for (int m = 0; m < 256; ++m) mix[m] = a * f.values[m] + b * g.values[m];
  const CepstralVector cf = cepstral_coefficients(f, 8);
  const CepstralVector cg = cepstral_coefficients(g, 8);
  const CepstralVector cm =
      cepstral_coefficients(grid_estimate(std::move(mix)), 8);
  for (int l = 0; l < 8; ++l) {
    CHECK(cm.coefficients[l] ==
          doctest::Approx(a * cf.coefficients[l] + b * cg.coefficients[l])
              .epsilon(1e-11));
  }
}

TEST_CASE("coefficient error shrinks as epochs lengthen") {
  std::mt19937_64 rng(4242);
  const double theta = 0.5;
  const int reps = 50, L = 7;
  std::vector<double> mse;
  for (const int n : {256, 1024, 4096}) {
    double total = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
      const TimeSeriesEpoch epoch = make_epoch(ma1_series(theta, n, rng));
      const CepstralVector c =
          cepstral_coefficients(multitaper_log_spectrum(epoch, 7), L);
      double sq = 0.0;
      for (int l = 1; l < L; ++l) {
        const double d = c.coefficients[l] - ma1_coefficient(theta, l);
        sq += d * d;
      }
      total += sq / (L - 1);
    }
    mse.push_back(total / reps);
  }
  CHECK(mse[1] < mse[0] / 2.0);
  CHECK(mse[2] < mse[1] / 2.0);
}

TEST_CASE("corpus construction keeps labels, order, and sizes") {
  std::mt19937_64 rng(99);
  std::vector<TimeSeriesEpoch> epochs;
  for (int j = 1; j <= 3; ++j) {
    for (int k = 0; k < 2; ++k) {
      epochs.push_back(make_epoch(gaussian_series(64, rng), j,
                                  "g" + std::to_string(j) + "e" +
                                      std::to_string(k)));
    }
  }
  EstimatorConfig config;
  config.kind = SpectrumEstimatorKind::Multitaper;
  config.tapers = 4;
  const LabeledCepstralCorpus corpus = corpus_from_epochs(epochs, config, 5);
  CHECK(corpus.size() == 6);
  CHECK(corpus.groupCount == 3);
  REQUIRE(corpus.groupSizes.size() == 3);
  CHECK(corpus.groupSizes[0] == 2);
  CHECK(corpus.groupSizes[1] == 2);
  CHECK(corpus.groupSizes[2] == 2);
  CHECK(corpus.truncation == 5);
  for (size_t i = 0; i < epochs.size(); ++i) {
    CHECK(corpus.vectors[i].id == epochs[i].id);
    CHECK(corpus.vectors[i].group == epochs[i].group);
    CHECK(corpus.vectors[i].size() == 5);
    CHECK(corpus.vectors[i].sourceLength == 64);
  }
}

TEST_CASE("corpus construction validates its inputs") {
  std::mt19937_64 rng(100);
  EstimatorConfig config;
  CHECK_THROWS_AS(corpus_from_epochs({}, config, 4), std::invalid_argument);

  std::vector<TimeSeriesEpoch> mixed;
  mixed.push_back(make_epoch(gaussian_series(64, rng), 1));
  mixed.push_back(make_epoch(gaussian_series(64, rng), 1));
  mixed.push_back(make_epoch(gaussian_series(32, rng), 2));
  mixed.push_back(make_epoch(gaussian_series(32, rng), 2));
  CHECK_THROWS_AS(corpus_from_epochs(mixed, config, 4), std::invalid_argument);

  std::vector<TimeSeriesEpoch> unlabeled;
  unlabeled.push_back(make_epoch(gaussian_series(64, rng), 1));
  unlabeled.push_back(make_epoch(gaussian_series(64, rng), 1));
  unlabeled.push_back(make_epoch(gaussian_series(64, rng)));
  unlabeled.push_back(make_epoch(gaussian_series(64, rng), 2));
  CHECK_THROWS_AS(corpus_from_epochs(unlabeled, config, 4),
                  std::invalid_argument);
}

TEST_CASE("direct estimator and single-taper multitaper agree in a corpus") {
  std::mt19937_64 rng(101);
  std::vector<TimeSeriesEpoch> epochs;
  for (int j = 1; j <= 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      epochs.push_back(make_epoch(gaussian_series(48, rng), j));
    }
  }
  EstimatorConfig direct;
  direct.kind = SpectrumEstimatorKind::Direct;
  EstimatorConfig single;
  single.kind = SpectrumEstimatorKind::Multitaper;
  single.tapers = 1;
  EstimatorConfig full;
  full.kind = SpectrumEstimatorKind::Multitaper;
  full.tapers = 7;
  const LabeledCepstralCorpus a = corpus_from_epochs(epochs, direct, 6);
  const LabeledCepstralCorpus b = corpus_from_epochs(epochs, single, 6);
  const LabeledCepstralCorpus c = corpus_from_epochs(epochs, full, 6);
  bool anyDiffer = false;
  for (int i = 0; i < a.size(); ++i) {
    for (int l = 0; l < 6; ++l) {
      CHECK(a.vectors[i].coefficients[l] == b.vectors[i].coefficients[l]);
      if (std::abs(a.vectors[i].coefficients[l] -
                   c.vectors[i].coefficients[l]) > 1e-9) {
        anyDiffer = true;
      }
    }
  }
  CHECK(anyDiffer);
}

TEST_CASE("labeled corpus assembly validates vectors") {
  auto vec = [](int size, int group) {
    CepstralVector v;
    v.coefficients = Eigen::VectorXd::LinSpaced(size, 0.0, 1.0);
    v.sourceLength = 64;
    if (group > 0) v.group = group;
    return v;
  };

  std::vector<CepstralVector> good{vec(4, 1), vec(4, 1), vec(4, 2), vec(4, 2)};
  const LabeledCepstralCorpus corpus = make_labeled_corpus(good);
  CHECK(corpus.groupCount == 2);
  CHECK(corpus.truncation == 4);

  CHECK_THROWS_AS(make_labeled_corpus({vec(4, 1), vec(3, 1), vec(4, 2),
                                       vec(4, 2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_labeled_corpus({vec(4, 1), vec(4, 1), vec(4, 0),
                                       vec(4, 2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_labeled_corpus({vec(4, 1), vec(4, 1), vec(4, 1),
                                       vec(4, 1)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_labeled_corpus({vec(4, 1), vec(4, 1), vec(4, 2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_labeled_corpus({vec(4, 1), vec(4, 1), vec(4, 3),
                                       vec(4, 3)}),
                  std::invalid_argument);
}

TEST_CASE("corpus truncation keeps leading coefficients and metadata") {
  std::mt19937_64 rng(102);
  std::vector<TimeSeriesEpoch> epochs;
  for (int j = 1; j <= 2; ++j) {
    for (int k = 0; k < 3; ++k) {
      epochs.push_back(make_epoch(gaussian_series(80, rng), j));
    }
  }
  EstimatorConfig config;
  const LabeledCepstralCorpus full = corpus_from_epochs(epochs, config, 9);
  const LabeledCepstralCorpus cut = truncate_corpus(full, 4);
  CHECK(cut.truncation == 4);
  CHECK(cut.groupCount == full.groupCount);
  CHECK(cut.size() == full.size());
  for (int i = 0; i < full.size(); ++i) {
    REQUIRE(cut.vectors[i].size() == 4);
    for (int l = 0; l < 4; ++l) {
      CHECK(cut.vectors[i].coefficients[l] ==
            full.vectors[i].coefficients[l]);
    }
    CHECK(cut.vectors[i].group == full.vectors[i].group);
  }
  CHECK_THROWS_AS(truncate_corpus(full, 0), std::invalid_argument);
  CHECK_THROWS_AS(truncate_corpus(full, 10), std::invalid_argument);
  CHECK_NOTHROW(truncate_corpus(full, 9));
}
