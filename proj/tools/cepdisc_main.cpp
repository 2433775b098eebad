#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cepdisc/baselines.hpp"
#include "cepdisc/cepstral.hpp"
#include "cepdisc/dataio.hpp"
#include "cepdisc/discriminant.hpp"
#include "cepdisc/errors.hpp"
#include "cepdisc/simulation.hpp"
#include "cepdisc/spectral.hpp"
#include "cepdisc/types.hpp"

namespace {

std::string fmt(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

int to_int(const std::string& text, const std::string& what) {
  int value = 0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw std::invalid_argument(what + ": '" + text + "' is not an integer");
  }
  return value;
}

double to_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw std::invalid_argument(what + ": '" + text + "' is not a number");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  for (;;) {
    const size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

// "2..8" or "2,4,6".
std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> grid;
  const size_t dots = text.find("..");
  if (dots != std::string::npos) {
    const int low = to_int(text.substr(0, dots), "truncation grid");
    const int high = to_int(text.substr(dots + 2), "truncation grid");
    if (high < low) {
      throw std::invalid_argument("truncation grid '" + text + "' is empty");
    }
    for (int v = low; v <= high; ++v) grid.push_back(v);
    return grid;
  }
  for (const std::string& part : split(text, ',')) {
    grid.push_back(to_int(part, "truncation grid"));
  }
  return grid;
}

// "lo:hi" or a single value.
std::pair<double, double> parse_range(const std::string& text,
                                      const std::string& what) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos) {
    const double v = to_double(text, what);
    return {v, v};
  }
  return {to_double(text.substr(0, colon), what),
          to_double(text.substr(colon + 1), what)};
}

std::string group_label(const std::vector<std::string>& labels, int group) {
  if (group >= 1 && group <= static_cast<int>(labels.size())) {
    return labels[group - 1];
  }
  return std::to_string(group);
}

void print_group_counts(const cepdisc::EpochCorpus& corpus) {
  std::vector<int> counts(corpus.groupLabels.size(), 0);
  for (const cepdisc::TimeSeriesEpoch& epoch : corpus.epochs) {
    if (epoch.group) ++counts[*epoch.group - 1];
  }
  std::cout << "groups:";
  for (size_t j = 0; j < counts.size(); ++j) {
    std::cout << ' ' << corpus.groupLabels[j] << '=' << counts[j];
  }
  std::cout << '\n';
}

void require_labeled(const cepdisc::EpochCorpus& corpus, const char* role) {
  if (corpus.epochs.empty()) {
    throw std::invalid_argument(std::string(role) + " corpus is empty");
  }
  for (const cepdisc::TimeSeriesEpoch& epoch : corpus.epochs) {
    if (!epoch.group) {
      throw std::invalid_argument(std::string(role) + " corpus has unlabeled "
                                  "epoch '" + epoch.id + "'");
    }
  }
}

// Re-indexes the epochs of `corpus` into the group space of `labels`.
// Unlabeled epochs pass through; unknown labels are rejected.
void remap_groups(cepdisc::EpochCorpus& corpus,
                  const std::vector<std::string>& labels) {
  if (labels.empty()) return;
  for (cepdisc::TimeSeriesEpoch& epoch : corpus.epochs) {
    if (!epoch.group) continue;
    const std::string& name = corpus.groupLabels[*epoch.group - 1];
    const auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) {
      throw std::invalid_argument("corpus group '" + name +
                                  "' is not one of the model's groups");
    }
    epoch.group = static_cast<int>(it - labels.begin()) + 1;
  }
  corpus.groupLabels = labels;
}

void print_confusion(const std::vector<int>& truth,
                     const std::vector<int>& predicted,
                     const std::vector<std::string>& labels, int groupCount) {
  std::vector<std::vector<int>> table(
      groupCount, std::vector<int>(groupCount, 0));
  int correct = 0;
  for (size_t i = 0; i < truth.size(); ++i) {
    ++table[truth[i] - 1][predicted[i] - 1];
    if (truth[i] == predicted[i]) ++correct;
  }
  size_t width = 8;
  for (int j = 1; j <= groupCount; ++j) {
    width = std::max(width, group_label(labels, j).size() + 2);
  }
  std::cout << "confusion matrix (rows true, columns predicted):\n";
  std::cout << std::setw(static_cast<int>(width)) << "";
  for (int j = 1; j <= groupCount; ++j) {
    std::cout << std::setw(static_cast<int>(width)) << group_label(labels, j);
  }
  std::cout << '\n';
  for (int i = 1; i <= groupCount; ++i) {
    std::cout << std::setw(static_cast<int>(width)) << group_label(labels, i);
    for (int j = 1; j <= groupCount; ++j) {
      std::cout << std::setw(static_cast<int>(width)) << table[i - 1][j - 1];
    }
    std::cout << '\n';
  }
  const double pct = 100.0 * correct / static_cast<double>(truth.size());
  std::cout << "accuracy: " << correct << "/" << truth.size() << " ("
            << std::fixed << std::setprecision(1) << pct << "%)\n"
            << std::defaultfloat << std::setprecision(6);
}

struct TrainArgs {
  std::string corpusPath;
  std::string outPath;
  std::string estimator = "multitaper";
  int tapers = 7;
  int span = 0;
  double jitter = 0.0;
  int truncation = 0;  // 0: select by cross-validation
  std::string grid = "2..8";
  std::string priors;
  std::string emitWeights;
  std::string emitCv;
  std::string emitSpectra;
};

int run_train(const TrainArgs& args) {
  cepdisc::EpochCorpus corpus = cepdisc::read_corpus(args.corpusPath);
  require_labeled(corpus, "training");

  cepdisc::EstimatorConfig config;
  config.kind = cepdisc::estimator_kind_from_string(args.estimator);
  config.tapers = args.tapers;
  config.span = args.span;
  config.options.jitter = args.jitter;
  cepdisc::validate(config);

  std::optional<std::vector<double>> priors;
  if (!args.priors.empty()) {
    std::vector<double> values;
    for (const std::string& part : split(args.priors, ',')) {
      values.push_back(to_double(part, "priors"));
    }
    priors = std::move(values);
  }

  print_group_counts(corpus);

  cepdisc::DiscriminantModel model;
  std::optional<cepdisc::CvSelection> selection;
  if (args.truncation > 0) {
    const cepdisc::LabeledCepstralCorpus cepstra = cepdisc::corpus_from_epochs(
        corpus.epochs, config, args.truncation);
    model = cepdisc::fit_discriminant(cepstra, priors);
    std::cout << "truncation L: " << model.truncation << '\n';
  } else {
    const std::vector<int> candidates = parse_grid(args.grid);
    selection = cepdisc::select_truncation_cv(corpus.epochs, config,
                                              candidates);
    const int maxL = *std::max_element(candidates.begin(), candidates.end());
    const cepdisc::LabeledCepstralCorpus cepstra = cepdisc::truncate_corpus(
        cepdisc::corpus_from_epochs(corpus.epochs, config, maxL),
        selection->bestTruncation);
    model = cepdisc::fit_discriminant(cepstra, priors);
    std::cout << "selected L: " << model.truncation << " (grid " << args.grid
              << ")\n";
  }

  std::cout << "components Q: " << model.components << '\n';
  std::cout << "eigenvalues:";
  for (int q = 0; q < model.components; ++q) {
    std::cout << ' ' << fmt(model.eigenvalues[q]);
  }
  std::cout << '\n';

  cepdisc::save_model(model, config, corpus.groupLabels, args.outPath);
  std::cout << "model written to " << args.outPath << '\n';

  if (!args.emitWeights.empty()) {
    cepdisc::emit_weight_functions(model, 256, args.emitWeights);
    std::cout << "weight functions written to " << args.emitWeights << '\n';
  }
  if (!args.emitCv.empty()) {
    if (!selection) {
      throw std::invalid_argument("--emit-cv needs --cv-grid selection");
    }
    cepdisc::emit_cv_curve(*selection, args.emitCv);
    std::cout << "cv curve written to " << args.emitCv << '\n';
  }
  if (!args.emitSpectra.empty()) {
    std::vector<cepdisc::LogSpectrumEstimate> estimates;
    std::vector<std::string> ids;
    for (const cepdisc::TimeSeriesEpoch& epoch : corpus.epochs) {
      estimates.push_back(cepdisc::estimate_log_spectrum(epoch, config));
      ids.push_back(epoch.id);
    }
    cepdisc::emit_log_spectra(estimates, ids, args.emitSpectra);
    std::cout << "log-spectra written to " << args.emitSpectra << '\n';
  }
  return 0;
}

struct ClassifyArgs {
  std::string modelPath;
  std::string corpusPath;
  std::string outPath;
  bool loo = false;
  std::string emitScatter;
};

int run_classify(const ClassifyArgs& args) {
  const cepdisc::LoadedModel loaded = cepdisc::load_model(args.modelPath);
  const cepdisc::DiscriminantModel& model = loaded.model;
  cepdisc::EpochCorpus corpus = cepdisc::read_corpus(args.corpusPath);
  if (corpus.epochs.empty()) {
    throw std::invalid_argument("corpus '" + args.corpusPath + "' is empty");
  }
  remap_groups(corpus, loaded.groupLabels);
  const std::vector<std::string>& labels =
      loaded.groupLabels.empty() ? corpus.groupLabels : loaded.groupLabels;

  std::vector<cepdisc::CepstralVector> vectors;
  for (const cepdisc::TimeSeriesEpoch& epoch : corpus.epochs) {
    const cepdisc::LogSpectrumEstimate estimate =
        cepdisc::estimate_log_spectrum(epoch, loaded.estimator);
    cepdisc::CepstralVector vector =
        cepdisc::cepstral_coefficients(estimate, model.truncation);
    vector.id = epoch.id;
    vector.group = epoch.group;
    vectors.push_back(std::move(vector));
  }

  std::vector<cepdisc::ClassificationResult> results;
  if (args.loo) {
    require_labeled(corpus, "leave-one-out");
    const cepdisc::LabeledCepstralCorpus cepstra =
        cepdisc::make_labeled_corpus(vectors);
    results = cepdisc::loo_classify(cepstra, model.truncation);
    std::cout << "leave-one-out refits on " << cepstra.size()
              << " epochs at L=" << model.truncation << '\n';
  } else {
    for (const cepdisc::CepstralVector& vector : vectors) {
      results.push_back(cepdisc::classify(model, vector));
    }
  }

  const int groupCount =
      args.loo ? static_cast<int>(results.front().perGroupObjective.size())
               : model.groupCount;

  if (!args.outPath.empty()) {
    std::string out = "epoch_id\tpredicted";
    const size_t scoreCount = results.front().scores.size();
    for (size_t q = 1; q <= scoreCount; ++q) {
      out += "\td" + std::to_string(q);
    }
    for (int j = 1; j <= groupCount; ++j) {
      out += "\tobj_" + group_label(labels, j);
    }
    out += '\n';
    for (size_t i = 0; i < results.size(); ++i) {
      out += corpus.epochs[i].id;
      out += '\t';
      out += group_label(labels, results[i].predictedGroup);
      for (double d : results[i].scores) {
        out += '\t';
        out += fmt(d);
      }
      for (double objective : results[i].perGroupObjective) {
        out += '\t';
        out += fmt(objective);
      }
      out += '\n';
    }
    cepdisc::write_file_atomic(args.outPath, out);
    std::cout << "predictions written to " << args.outPath << '\n';
  }

  const bool allLabeled = std::all_of(
      corpus.epochs.begin(), corpus.epochs.end(),
      [](const cepdisc::TimeSeriesEpoch& e) { return e.group.has_value(); });
  if (allLabeled) {
    std::vector<int> truth, predicted;
    for (size_t i = 0; i < results.size(); ++i) {
      truth.push_back(*corpus.epochs[i].group);
      predicted.push_back(results[i].predictedGroup);
    }
    print_confusion(truth, predicted, labels, groupCount);
  }

  if (!args.emitScatter.empty()) {
    const std::string warning = cepdisc::emit_discriminant_scatter(
        model, vectors, labels, args.emitScatter);
    std::cout << "scatter written to " << args.emitScatter << '\n';
    if (!warning.empty()) std::cerr << "warning: " << warning << '\n';
  }
  return 0;
}

struct SimulateArgs {
  std::string sigma2 = "1:1";
  int perGroup = 50;
  int testPerGroup = 50;
  int length = 500;
  int reps = 100;
  std::uint64_t seed = 1;
  std::string methods;
  std::string grid = "2..8";
  int tapers = 7;
  int threads = -1;  // -1: CEPDISC_THREADS or auto
  std::string outPath;
};

int run_simulate(const SimulateArgs& args) {
  cepdisc::ExperimentConfig config;
  const auto [s2low, s2high] = parse_range(args.sigma2, "--sigma2");
  config.groupSpecs = cepdisc::default_group_specs(s2low, s2high);
  config.epochsPerGroup = args.perGroup;
  config.testPerGroup = args.testPerGroup;
  config.length = args.length;
  config.reps = args.reps;
  config.seed = args.seed;
  config.truncationCandidates = parse_grid(args.grid);
  config.tapers = args.tapers;
  if (!args.methods.empty()) {
    config.methods.clear();
    for (const std::string& part : split(args.methods, ',')) {
      config.methods.push_back(cepdisc::method_from_string(part));
    }
  }
  if (args.threads >= 0) {
    config.threads = args.threads;
  } else if (const char* env = std::getenv("CEPDISC_THREADS")) {
    config.threads = to_int(env, "CEPDISC_THREADS");
  } else {
    config.threads = 0;
  }
  cepdisc::validate(config);

  const cepdisc::ExperimentReport report = cepdisc::run_experiment(config);

  std::cout << "sigma2 in [" << fmt(s2low) << ", " << fmt(s2high) << "], n_j="
            << config.epochsPerGroup << ", N=" << config.length << ", "
            << config.reps << " reps, seed " << config.seed << '\n';
  std::cout << std::left << std::setw(22) << "method" << std::right
            << std::setw(10) << "mean" << std::setw(10) << "sd"
            << std::setw(10) << "failed" << '\n';
  std::cout << std::fixed << std::setprecision(2);
  for (const cepdisc::MethodSummary& summary : report.summaries) {
    std::cout << std::left << std::setw(22) << to_string(summary.method)
              << std::right << std::setw(10) << summary.meanRate
              << std::setw(10) << summary.sdRate << std::setw(10)
              << summary.failedReps << '\n';
  }
  std::cout << std::defaultfloat << std::setprecision(6);

  if (!args.outPath.empty()) {
    cepdisc::save_report(report, args.outPath);
    std::cout << "report written to " << args.outPath << '\n';
  }
  return 0;
}

struct BaselineArgs {
  std::string trainPath;
  std::string testPath;
  std::string measure;
  double alpha = 0.5;
  bool tune = false;
  int span = 0;
  std::string outPath;
};

int run_baseline(const BaselineArgs& args) {
  cepdisc::EpochCorpus train = cepdisc::read_corpus(args.trainPath);
  require_labeled(train, "training");
  cepdisc::EpochCorpus test = cepdisc::read_corpus(args.testPath);
  if (test.epochs.empty()) {
    throw std::invalid_argument("test corpus '" + args.testPath +
                                "' is empty");
  }
  remap_groups(test, train.groupLabels);

  cepdisc::InformationMeasureConfig measure;
  if (args.measure == "kl") {
    measure.kind = cepdisc::InformationMeasureConfig::Kind::KullbackLeibler;
  } else if (args.measure == "chernoff") {
    measure.kind = cepdisc::InformationMeasureConfig::Kind::Chernoff;
  } else {
    throw std::invalid_argument("--measure must be kl or chernoff");
  }

  std::vector<cepdisc::SpectrumEstimate> trainSpectra;
  std::vector<int> trainGroups;
  for (const cepdisc::TimeSeriesEpoch& epoch : train.epochs) {
    trainSpectra.push_back(cepdisc::baseline_spectrum(epoch, args.span));
    trainGroups.push_back(*epoch.group);
  }
  const std::vector<cepdisc::GroupSpectrumTemplate> templates =
      cepdisc::group_templates(trainSpectra, trainGroups);

  if (measure.kind == cepdisc::InformationMeasureConfig::Kind::Chernoff) {
    if (args.tune) {
      measure.alpha = cepdisc::tune_chernoff_alpha(trainSpectra, trainGroups);
      std::cout << "tuned alpha: " << measure.alpha << '\n';
    } else {
      measure.alpha = args.alpha;
    }
  }

  std::string out = "epoch_id\tpredicted";
  for (const cepdisc::GroupSpectrumTemplate& t : templates) {
    out += "\tm_" + group_label(train.groupLabels, t.group);
  }
  out += '\n';

  std::vector<int> truth, predicted;
  bool allLabeled = true;
  for (const cepdisc::TimeSeriesEpoch& epoch : test.epochs) {
    const cepdisc::SpectrumEstimate spectrum =
        cepdisc::baseline_spectrum(epoch, args.span);
    const int choice =
        cepdisc::classify_information(spectrum, templates, measure);
    out += epoch.id;
    out += '\t';
    out += group_label(train.groupLabels, choice);
    for (const cepdisc::GroupSpectrumTemplate& t : templates) {
      const double value =
          measure.kind == cepdisc::InformationMeasureConfig::Kind::Chernoff
              ? cepdisc::chernoff_measure(spectrum, t, measure.alpha)
              : cepdisc::kl_measure(spectrum, t);
      out += '\t';
      out += fmt(value);
    }
    out += '\n';
    if (epoch.group) {
      truth.push_back(*epoch.group);
      predicted.push_back(choice);
    } else {
      allLabeled = false;
    }
  }

  if (!args.outPath.empty()) {
    cepdisc::write_file_atomic(args.outPath, out);
    std::cout << "predictions written to " << args.outPath << '\n';
  }
  if (allLabeled) {
    print_confusion(truth, predicted, train.groupLabels,
                    static_cast<int>(templates.size()));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cepstral discriminant analysis of replicated time series"};
  app.require_subcommand(1);

  TrainArgs trainArgs;
  CLI::App* train = app.add_subcommand(
      "train", "Fit a cepstral discriminant model on a labeled corpus");
  train->add_option("--corpus", trainArgs.corpusPath, "Training corpus (TSV)")
      ->required()
      ->check(CLI::ExistingFile);
  train->add_option("--out", trainArgs.outPath, "Output model path")
      ->required();
  train->add_option("--estimator", trainArgs.estimator,
                    "Log-spectrum estimator: multitaper, direct, or smoothed");
  train->add_option("--tapers", trainArgs.tapers,
                    "Sine tapers for the multitaper estimator");
  train->add_option("--span", trainArgs.span,
                    "Fixed smoothing span for the smoothed estimator "
                    "(0: per-epoch GCV)");
  train->add_option("--jitter", trainArgs.jitter,
                    "Constant added to periodograms before the log");
  CLI::Option* fixedL = train->add_option(
      "--L", trainArgs.truncation, "Fixed number of cepstral coefficients");
  train->add_option("--cv-grid", trainArgs.grid,
                    "Truncation candidates for cross-validation, e.g. 2..8 "
                    "or 2,4,6")
      ->excludes(fixedL);
  train->add_option("--priors", trainArgs.priors,
                    "Comma-separated prior probabilities (default: sample "
                    "proportions)");
  train->add_option("--emit-weights", trainArgs.emitWeights,
                    "Write discriminant weight functions (TSV)");
  train->add_option("--emit-cv", trainArgs.emitCv,
                    "Write the cross-validation error curve (TSV)");
  train->add_option("--emit-spectra", trainArgs.emitSpectra,
                    "Write per-epoch log-spectrum estimates (TSV)");

  ClassifyArgs classifyArgs;
  CLI::App* classify = app.add_subcommand(
      "classify", "Classify a corpus with a fitted model");
  classify->add_option("--model", classifyArgs.modelPath, "Model file")
      ->required()
      ->check(CLI::ExistingFile);
  classify
      ->add_option("--corpus", classifyArgs.corpusPath, "Corpus to classify")
      ->required()
      ->check(CLI::ExistingFile);
  classify->add_option("--out", classifyArgs.outPath, "Predictions TSV path");
  classify->add_flag("--loo", classifyArgs.loo,
                     "Leave-one-out refit on the (labeled) corpus using the "
                     "model's estimator and L");
  classify->add_option("--emit-scatter", classifyArgs.emitScatter,
                       "Write discriminant scores per epoch (TSV)");

  SimulateArgs simulateArgs;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo comparison of the classifiers on conditional "
                  "AR(2) groups");
  simulate->add_option("--sigma2", simulateArgs.sigma2,
                       "Innovation-variance range lo:hi");
  simulate->add_option("--nj", simulateArgs.perGroup,
                       "Training epochs per group");
  simulate->add_option("--test-per-group", simulateArgs.testPerGroup,
                       "Test epochs per group");
  simulate->add_option("--N", simulateArgs.length, "Epoch length");
  simulate->add_option("--reps", simulateArgs.reps, "Monte Carlo repetitions");
  simulate->add_option("--seed", simulateArgs.seed, "Random seed");
  simulate->add_option("--methods", simulateArgs.methods,
                       "Comma-separated methods (default: all)");
  simulate->add_option("--L-grid", simulateArgs.grid,
                       "Truncation candidates, e.g. 2..8");
  simulate->add_option("--tapers", simulateArgs.tapers, "Sine tapers");
  simulate->add_option("--threads", simulateArgs.threads,
                       "Worker threads (0: hardware; default: "
                       "CEPDISC_THREADS or hardware)");
  simulate->add_option("--out", simulateArgs.outPath, "Report JSON path");

  BaselineArgs baselineArgs;
  CLI::App* baseline = app.add_subcommand(
      "baseline", "Information-measure classification from smoothed "
                  "periodograms");
  baseline->add_option("--train", baselineArgs.trainPath, "Labeled training "
                       "corpus")
      ->required()
      ->check(CLI::ExistingFile);
  baseline->add_option("--test", baselineArgs.testPath, "Corpus to classify")
      ->required()
      ->check(CLI::ExistingFile);
  baseline->add_option("--measure", baselineArgs.measure,
                       "Disparity measure: kl or chernoff")
      ->required();
  CLI::Option* alpha = baseline->add_option(
      "--alpha", baselineArgs.alpha, "Chernoff mixing parameter in (0,1)");
  baseline->add_flag("--tune", baselineArgs.tune,
                     "Choose alpha by leave-one-out on the training corpus")
      ->excludes(alpha);
  baseline->add_option("--span", baselineArgs.span,
                       "Fixed smoothing span (0: per-epoch GCV)");
  baseline->add_option("--out", baselineArgs.outPath, "Predictions TSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : 2;
  }

  try {
    if (train->parsed()) return run_train(trainArgs);
    if (classify->parsed()) return run_classify(classifyArgs);
    if (simulate->parsed()) return run_simulate(simulateArgs);
    if (baseline->parsed()) return run_baseline(baselineArgs);
  } catch (const cepdisc::ParseError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 2;
  } catch (const cepdisc::SchemaError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 2;
  } catch (const cepdisc::VersionError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 2;
  } catch (const cepdisc::DegenerateSpectrumError& error) {
    std::cerr << "numerical failure: " << error.what() << '\n';
    return 1;
  } catch (const cepdisc::IllConditionedError& error) {
    std::cerr << "numerical failure: " << error.what() << '\n';
    return 1;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  }
  return 0;
}
