#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cepdisc/spectral.hpp"
#include "cepdisc/types.hpp"

using namespace cepdisc;

namespace {

constexpr double kPi = std::numbers::pi;

TimeSeriesEpoch make_epoch(std::vector<double> values) {
  TimeSeriesEpoch epoch;
  epoch.id = "test";
  epoch.values = std::move(values);
  return epoch;
}

std::vector<double> gaussian_series(int n, std::mt19937_64& rng,
                                    double sd = 1.0) {
  std::normal_distribution<double> normal(0.0, sd);
  std::vector<double> values(static_cast<size_t>(n));
  for (double& v : values) v = normal(rng);
  return values;
}

// Quadratic-time reference transform: the test-side oracle for the FFT path.
std::vector<double> naive_power(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> power(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    double re = 0.0, im = 0.0;
    for (int t = 0; t < n; ++t) {
      const double angle = -2.0 * kPi * m * t / n;
      re += x[t] * std::cos(angle);
      im += x[t] * std::sin(angle);
    }
    power[m] = re * re + im * im;
  }
  return power;
}

std::vector<double> ma1_series(double theta, int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> innovations(static_cast<size_t>(n) + 1);
  for (double& e : innovations) e = normal(rng);
  std::vector<double> values(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) {
    values[t] = innovations[t + 1] + theta * innovations[t];
  }
  return values;
}

double ma1_log_spectrum(double theta, double lambda) {
  return std::log(1.0 + theta * theta +
                  2.0 * theta * std::cos(2.0 * kPi * lambda));
}

// E log(mean of R unit-mean exponentials) = psi(R) - log R.
constexpr double kLogChiSqBias7 = -0.0731257739947525;

}  // namespace

TEST_CASE("sine tapers match the closed form at N=3") {
  const TaperBank bank = sine_tapers(3, 2);
  CHECK(bank.h(0, 0) == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(bank.h(0, 1) == doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(bank.h(0, 2) == doctest::Approx(0.5).epsilon(1e-5));
  const double cross = bank.h(0, 0) * bank.h(1, 0) +
                       bank.h(0, 1) * bank.h(1, 1) +
                       bank.h(0, 2) * bank.h(1, 2);
  CHECK(std::abs(cross) < 1e-12);
}

TEST_CASE("full sine-taper banks are orthonormal") {
  for (const auto& [n, r] : {std::pair{16, 16}, {64, 8}, {100, 7}, {33, 33}}) {
    const TaperBank bank = sine_tapers(n, r);
    double worst = 0.0;
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < r; ++b) {
        double dot = 0.0;
        for (int t = 0; t < n; ++t) dot += bank.h(a, t) * bank.h(b, t);
        worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
      }
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("sine taper arguments are validated") {
  CHECK_THROWS_AS(sine_tapers(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sine_tapers(8, 0), std::invalid_argument);
  CHECK_THROWS_AS(sine_tapers(8, 9), std::invalid_argument);
}

TEST_CASE("tapered periodogram matches the quadratic-time transform") {
  std::mt19937_64 rng(11);
  const int n = 24;
  const TimeSeriesEpoch epoch = make_epoch(gaussian_series(n, rng));
  const TaperBank bank = sine_tapers(n, 3);
  for (int taper = 1; taper <= 3; ++taper) {
    std::vector<double> tapered(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) {
      tapered[t] = bank.h(taper - 1, t) * epoch.values[t];
    }
    const std::vector<double> expected = naive_power(tapered);
    const std::vector<double> actual = tapered_periodogram(epoch, bank, taper);
    REQUIRE(actual.size() == expected.size());
    for (int m = 0; m < n; ++m) {
      CHECK(actual[m] == doctest::Approx(expected[m]).epsilon(1e-10));
      CHECK(actual[m] >= 0.0);
    }
    for (int m = 1; m < n; ++m) {
      CHECK(actual[m] == actual[n - m]);
    }
  }
}

TEST_CASE("tapered periodogram satisfies Parseval's identity") {
  std::mt19937_64 rng(12);
  const int n = 50;
  const TimeSeriesEpoch epoch = make_epoch(gaussian_series(n, rng));
  const TaperBank bank = sine_tapers(n, 2);
  for (int taper = 1; taper <= 2; ++taper) {
    const std::vector<double> power = tapered_periodogram(epoch, bank, taper);
    double sumPower = 0.0;
    for (double p : power) sumPower += p;
    double sumSquares = 0.0;
    for (int t = 0; t < n; ++t) {
      const double v = bank.h(taper - 1, t) * epoch.values[t];
      sumSquares += v * v;
    }
    CHECK(sumPower / n == doctest::Approx(sumSquares).epsilon(1e-8));
  }
}

TEST_CASE("tapered periodogram peaks at the input frequency") {
  const int n = 64, m0 = 8;
  std::vector<double> values(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) values[t] = std::cos(2.0 * kPi * t * m0 / n);
  const TaperBank bank = sine_tapers(n, 1);
  const std::vector<double> power =
      tapered_periodogram(make_epoch(values), bank, 1);
  int argmax = 0;
  for (int m = 1; m <= n / 2; ++m) {
    if (power[m] > power[argmax]) argmax = m;
  }
  CHECK(argmax >= 7);
  CHECK(argmax <= 9);
}

TEST_CASE("all-zero epoch has an identically zero periodogram") {
  const TimeSeriesEpoch epoch = make_epoch(std::vector<double>(16, 0.0));
  const TaperBank bank = sine_tapers(16, 1);
  for (double p : tapered_periodogram(epoch, bank, 1)) CHECK(p == 0.0);
}

TEST_CASE("normalized periodogram divides by the length") {
  std::mt19937_64 rng(13);
  const int n = 32;
  const TimeSeriesEpoch epoch = make_epoch(gaussian_series(n, rng));
  const TaperBank bank = sine_tapers(n, 1);
  const std::vector<double> plain = tapered_periodogram(epoch, bank, 1, false);
  const std::vector<double> normalized =
      tapered_periodogram(epoch, bank, 1, true);
  for (int m = 0; m < n; ++m) {
    CHECK(normalized[m] == doctest::Approx(plain[m] / n).epsilon(1e-15));
  }
}

TEST_CASE("periodogram argument validation") {
  std::mt19937_64 rng(14);
  const TimeSeriesEpoch epoch = make_epoch(gaussian_series(16, rng));
  const TaperBank bank = sine_tapers(16, 2);
  CHECK_THROWS_AS(tapered_periodogram(epoch, sine_tapers(12, 1), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(tapered_periodogram(epoch, bank, 0), std::invalid_argument);
  CHECK_THROWS_AS(tapered_periodogram(epoch, bank, 3), std::invalid_argument);
  TimeSeriesEpoch bad = epoch;
  bad.values[4] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(tapered_periodogram(bad, bank, 1), std::invalid_argument);
}

TEST_CASE("multitaper estimate is the log of the averaged periodograms") {
  std::mt19937_64 rng(15);
  const int n = 40, tapers = 5;
  const TimeSeriesEpoch epoch = make_epoch(gaussian_series(n, rng));
  const TaperBank bank = sine_tapers(n, tapers);
  std::vector<double> mean(static_cast<size_t>(n), 0.0);
  for (int r = 1; r <= tapers; ++r) {
    const std::vector<double> power = tapered_periodogram(epoch, bank, r);
    for (int m = 0; m < n; ++m) mean[m] += power[m] / tapers;
  }
  const LogSpectrumEstimate estimate = multitaper_log_spectrum(epoch, tapers);
  CHECK(estimate.estimator == SpectrumEstimatorKind::Multitaper);
  CHECK(estimate.estimatorParam == tapers);
  CHECK(estimate.sourceLength == n);
  for (int m = 0; m < n; ++m) {
    CHECK(estimate.values[m] ==
          doctest::Approx(std::log(mean[m])).epsilon(1e-12));
  }
}

TEST_CASE("direct estimate equals single-taper multitaper exactly") {
  std::mt19937_64 rng(16);
  const TimeSeriesEpoch epoch = make_epoch(gaussian_series(64, rng));
  const LogSpectrumEstimate direct = direct_log_spectrum(epoch);
  const LogSpectrumEstimate single = multitaper_log_spectrum(epoch, 1);
  CHECK(direct.estimator == SpectrumEstimatorKind::Direct);
  CHECK(single.estimator == SpectrumEstimatorKind::Direct);
  REQUIRE(direct.values.size() == single.values.size());
  for (size_t m = 0; m < direct.values.size(); ++m) {
    CHECK(direct.values[m] == single.values[m]);
  }
}

TEST_CASE("log-spectrum estimates are even-symmetric") {
  std::mt19937_64 rng(17);
  const int n = 30;
  const TimeSeriesEpoch epoch = make_epoch(gaussian_series(n, rng));
  for (const LogSpectrumEstimate& estimate :
       {multitaper_log_spectrum(epoch, 4), direct_log_spectrum(epoch),
        smoothed_log_spectrum(epoch, 5)}) {
    for (int m = 1; m < n; ++m) {
      CHECK(estimate.values[m] ==
            doctest::Approx(estimate.values[n - m]).epsilon(1e-13));
    }
  }
}

TEST_CASE("scaling the series shifts the log-spectrum by twice the log") {
  std::mt19937_64 rng(18);
  const int n = 36;
  TimeSeriesEpoch epoch = make_epoch(gaussian_series(n, rng));
  const double c = 3.7;
  TimeSeriesEpoch scaled = epoch;
  for (double& v : scaled.values) v *= c;
  const LogSpectrumEstimate base = multitaper_log_spectrum(epoch, 6);
  const LogSpectrumEstimate shifted = multitaper_log_spectrum(scaled, 6);
  for (int m = 0; m < n; ++m) {
    CHECK(shifted.values[m] ==
          doctest::Approx(base.values[m] + 2.0 * std::log(c)).epsilon(1e-12));
  }
}

TEST_CASE("zero series raises a degenerate-spectrum error") {
  const TimeSeriesEpoch epoch = make_epoch(std::vector<double>(32, 0.0));
  CHECK_THROWS_AS(multitaper_log_spectrum(epoch, 3), DegenerateSpectrumError);
  CHECK_THROWS_AS(direct_log_spectrum(epoch), DegenerateSpectrumError);
  CHECK_THROWS_AS(smoothed_log_spectrum(epoch, 5), DegenerateSpectrumError);
  SpectralOptions jittered;
  jittered.jitter = 1e-12;
  const LogSpectrumEstimate estimate =
      multitaper_log_spectrum(epoch, 3, jittered);
  for (double v : estimate.values) {
    CHECK(v == doctest::Approx(std::log(1e-12)).epsilon(1e-12));
  }
}

TEST_CASE("multitaper of white noise carries the averaged log-chi-square "
          "bias") {
  std::mt19937_64 rng(20240817);
  const int n = 1024, tapers = 7, reps = 200;
  double sum = 0.0;
  long count = 0;
  for (int rep = 0; rep < reps; ++rep) {
    const TimeSeriesEpoch epoch = make_epoch(gaussian_series(n, rng));
    const LogSpectrumEstimate estimate =
        multitaper_log_spectrum(epoch, tapers);
    for (double v : estimate.values) {
      sum += v;
      ++count;
    }
  }
  const double deviation = sum / count - kLogChiSqBias7;
  CHECK(std::abs(deviation) < 0.05);
}

TEST_CASE("demeaned multitaper estimate tracks a demeaned MA(1) truth") {
  std::mt19937_64 rng(99101);
  const int n = 2048, tapers = 7, reps = 100;
  const double theta = 0.5;
  std::vector<double> average(static_cast<size_t>(n), 0.0);
  for (int rep = 0; rep < reps; ++rep) {
    const TimeSeriesEpoch epoch = make_epoch(ma1_series(theta, n, rng));
    const LogSpectrumEstimate estimate =
        multitaper_log_spectrum(epoch, tapers);
    for (int m = 0; m < n; ++m) average[m] += estimate.values[m] / reps;
  }
  double estimateMean = 0.0, truthMean = 0.0;
  std::vector<double> truth(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    truth[m] = ma1_log_spectrum(theta, static_cast<double>(m) / n);
    estimateMean += average[m] / n;
    truthMean += truth[m] / n;
  }
  double worst = 0.0;
  for (int m = 0; m < n; ++m) {
    worst = std::max(worst, std::abs((average[m] - estimateMean) -
                                     (truth[m] - truthMean)));
  }
  CHECK(worst < 0.5);
}

TEST_CASE("multitaper error level stays at the averaged log-chi-square "
          "variance across epoch lengths") {
  // With a fixed taper count the per-bin deviation of the demeaned estimate
  // has variance trigamma(R) regardless of N; the squared bias term decays
  // with N and is far below the Monte Carlo resolution here.  The consistency
  // of the derived cepstral coefficients (variance ~ 1/N) is covered in the
  // cepstral suite.
  std::mt19937_64 rng(771);
  const double theta = 0.5;
  const int tapers = 7, reps = 60;
  const double trigamma7 = 0.15354517795933754;
  for (const int n : {256, 1024, 4096}) {
    std::vector<double> truth(static_cast<size_t>(n));
    double truthMean = 0.0;
    for (int m = 0; m < n; ++m) {
      truth[m] = ma1_log_spectrum(theta, static_cast<double>(m) / n);
      truthMean += truth[m] / n;
    }
    double total = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
      const TimeSeriesEpoch epoch = make_epoch(ma1_series(theta, n, rng));
      const LogSpectrumEstimate estimate =
          multitaper_log_spectrum(epoch, tapers);
      double estimateMean = 0.0;
      for (double v : estimate.values) estimateMean += v / n;
      double sq = 0.0;
      for (int m = 0; m < n; ++m) {
        const double d =
            (estimate.values[m] - estimateMean) - (truth[m] - truthMean);
        sq += d * d;
      }
      total += sq / n;
    }
    CHECK(std::abs(total / reps - trigamma7) < 0.02);
  }
}

TEST_CASE("modified Daniell weights") {
  const std::vector<double> w5 = modified_daniell_weights(5);
  REQUIRE(w5.size() == 5);
  CHECK(w5[0] == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(w5[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w5[2] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w5[3] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w5[4] == doctest::Approx(0.125).epsilon(1e-15));
  for (int span = 1; span <= 15; span += 2) {
    double sum = 0.0;
    for (double w : modified_daniell_weights(span)) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(modified_daniell_weights(4), std::invalid_argument);
  CHECK_THROWS_AS(modified_daniell_weights(0), std::invalid_argument);
}

TEST_CASE("modified Daniell smoothing preserves constants") {
  const std::vector<double> flat(40, 2.75);
  for (int span : {1, 3, 5, 9}) {
    for (double v : modified_daniell_smooth(flat, span)) {
      CHECK(v == doctest::Approx(2.75).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(modified_daniell_smooth(flat, 41), std::invalid_argument);
}

TEST_CASE("span-one smoothing reproduces the direct estimate") {
  std::mt19937_64 rng(21);
  const TimeSeriesEpoch epoch = make_epoch(gaussian_series(48, rng));
  const LogSpectrumEstimate smoothed = smoothed_log_spectrum(epoch, 1);
  const LogSpectrumEstimate direct = direct_log_spectrum(epoch);
  CHECK(smoothed.estimator == SpectrumEstimatorKind::Smoothed);
  CHECK(smoothed.estimatorParam == 1);
  for (size_t m = 0; m < direct.values.size(); ++m) {
    CHECK(smoothed.values[m] == direct.values[m]);
  }
}

TEST_CASE("smoothed estimate is the log of the smoothed first periodogram") {
  std::mt19937_64 rng(22);
  const int n = 44, span = 5;
  const TimeSeriesEpoch epoch = make_epoch(gaussian_series(n, rng));
  const std::vector<double> raw =
      tapered_periodogram(epoch, sine_tapers(n, 1), 1);
  const std::vector<double> smoothedRaw = modified_daniell_smooth(raw, span);
  const LogSpectrumEstimate estimate = smoothed_log_spectrum(epoch, span);
  for (int m = 0; m < n; ++m) {
    CHECK(estimate.values[m] ==
          doctest::Approx(std::log(smoothedRaw[m])).epsilon(1e-12));
  }
  CHECK_THROWS_AS(smoothed_log_spectrum(epoch, 4), std::invalid_argument);
  CHECK_THROWS_AS(smoothed_log_spectrum(epoch, n + 1), std::invalid_argument);
}

TEST_CASE("GCV candidate grid runs over odd spans up to 2*sqrt(N)+1") {
  const std::vector<int> grid = gcv_candidate_spans(100);
  REQUIRE(!grid.empty());
  CHECK(grid.front() == 3);
  CHECK(grid.back() == 21);
  for (size_t i = 1; i < grid.size(); ++i) {
    CHECK(grid[i] == grid[i - 1] + 2);
  }
  CHECK(gcv_candidate_spans(16).back() == 9);
}

TEST_CASE("GCV smooths a flat spectrum more than a sharply peaked one") {
  // Paired runs on white noise versus a strongly peaked AR(2).  The selected
  // span is noisy run to run, so the assertion is on the mean separation.
  std::mt19937_64 rng(5151);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = 512, runs = 100;
  const std::vector<int> grid = gcv_candidate_spans(n);
  double noiseTotal = 0.0, peakTotal = 0.0;
  for (int run = 0; run < runs; ++run) {
    const int noiseSpan = gcv_span(make_epoch(gaussian_series(n, rng)));
    CHECK(noiseSpan % 2 == 1);
    CHECK(noiseSpan >= grid.front());
    CHECK(noiseSpan <= grid.back());
    std::vector<double> values(static_cast<size_t>(n));
    double prev1 = 0.0, prev2 = 0.0;
    for (int t = -200; t < n; ++t) {
      const double x = 1.4 * prev1 - 0.75 * prev2 + normal(rng);
      prev2 = prev1;
      prev1 = x;
      if (t >= 0) values[t] = x;
    }
    const int peakSpan = gcv_span(make_epoch(std::move(values)));
    CHECK(peakSpan % 2 == 1);
    CHECK(peakSpan >= grid.front());
    CHECK(peakSpan <= grid.back());
    noiseTotal += noiseSpan;
    peakTotal += peakSpan;
  }
  CHECK(noiseTotal / runs >= 9.0);
  CHECK(noiseTotal / runs - peakTotal / runs > 2.0);
}

TEST_CASE("GCV span selection needs a minimum length") {
  std::mt19937_64 rng(23);
  CHECK_THROWS_AS(gcv_span(make_epoch(gaussian_series(12, rng))),
                  std::invalid_argument);
  CHECK_NOTHROW(gcv_span(make_epoch(gaussian_series(16, rng))));
}

TEST_CASE("estimator configs dispatch to the matching estimator") {
  std::mt19937_64 rng(24);
  const TimeSeriesEpoch epoch = make_epoch(gaussian_series(64, rng));

  EstimatorConfig config;
  config.kind = SpectrumEstimatorKind::Multitaper;
  config.tapers = 5;
  LogSpectrumEstimate estimate = estimate_log_spectrum(epoch, config);
  CHECK(estimate.estimator == SpectrumEstimatorKind::Multitaper);
  CHECK(estimate.estimatorParam == 5);

  config.kind = SpectrumEstimatorKind::Direct;
  estimate = estimate_log_spectrum(epoch, config);
  CHECK(estimate.estimator == SpectrumEstimatorKind::Direct);

  config.kind = SpectrumEstimatorKind::Smoothed;
  config.span = 7;
  estimate = estimate_log_spectrum(epoch, config);
  CHECK(estimate.estimator == SpectrumEstimatorKind::Smoothed);
  CHECK(estimate.estimatorParam == 7);

  config.span = 0;
  estimate = estimate_log_spectrum(epoch, config);
  const std::vector<int> grid = gcv_candidate_spans(64);
  CHECK(std::find(grid.begin(), grid.end(), estimate.estimatorParam) !=
        grid.end());
}

TEST_CASE("spectral options are validated") {
  std::mt19937_64 rng(25);
  const TimeSeriesEpoch epoch = make_epoch(gaussian_series(32, rng));
  SpectralOptions options;
  options.jitter = -1.0;
  CHECK_THROWS_AS(multitaper_log_spectrum(epoch, 3, options),
                  std::invalid_argument);
}
