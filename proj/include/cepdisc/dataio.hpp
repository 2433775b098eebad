#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cepdisc/discriminant.hpp"
#include "cepdisc/errors.hpp"
#include "cepdisc/simulation.hpp"
#include "cepdisc/types.hpp"

namespace cepdisc {

/// Epochs plus the dictionary mapping 1-based group indices to label strings.
struct EpochCorpus {
  std::vector<TimeSeriesEpoch> epochs;
  std::vector<std::string> groupLabels;  ///< in order of first appearance
};

/// Reads a long-format tab-separated corpus with header
/// `epoch_id<TAB>group<TAB>t<TAB>value`: one row per sample, t running
/// 1..N contiguously per epoch, rows of an epoch contiguous, N identical
/// across epochs. The group field "-" (or empty) marks an unlabeled epoch.
/// An empty file yields an empty corpus.
EpochCorpus read_corpus(const std::filesystem::path& path);

/// Inverse of read_corpus at full round-trip precision. Labeled epochs must
/// index into corpus.groupLabels; unlabeled epochs are written as "-".
void write_corpus(const EpochCorpus& corpus, const std::filesystem::path& path);

/// Raw stride-interval record for one participant: the elapsed time of each
/// gait cycle against the event time at which it completed.
struct StrideRecord {
  std::string id;
  std::string group;
  std::vector<double> eventTimes;  ///< seconds, strictly increasing
  std::vector<double> intervals;   ///< seconds, positive
};

/// Parses a whitespace-separated record with event time and stride interval
/// as the first two columns (extra columns are ignored). `id` defaults to the
/// file stem. Throws ParseError (with line number) on malformed rows,
/// SchemaError on non-increasing times or non-positive intervals.
StrideRecord read_stride_record(const std::filesystem::path& path,
                                std::string group = "", std::string id = "");

struct GaitPreprocessOptions {
  double startupSeconds = 20.0;
  double durationSeconds = 210.0;  ///< 3.5 min analysis window
  double sampleHz = 2.0;
  int medianWindow = 11;           ///< running-median window (odd)
  double sdThreshold = 3.0;        ///< replacement threshold in sample SDs
  double splineLambda = 0.0;       ///< 0 selects the penalty by GCV
};

/// Stride-interval preprocessing: drop events in the first startupSeconds,
/// replace outliers beyond sdThreshold sample SDs of the running median by
/// that median, fit a cubic smoothing spline to interval-vs-time, sample it
/// at sampleHz over the analysis window (420 points at the defaults), and
/// remove the least-squares linear trend.
TimeSeriesEpoch gait_preprocess(const StrideRecord& record,
                                const GaitPreprocessOptions& options = {});

/// Reads and preprocesses every stride record in `directory` whose file stem
/// is a letters-then-digits name (e.g. control7.ts); the letter prefix
/// becomes the group label. Files are ordered by (prefix, number), and the
/// label dictionary follows that order. Missing directory: invalid-argument;
/// no matching files: empty corpus.
EpochCorpus load_gait_directory(const std::filesystem::path& directory,
                                const GaitPreprocessOptions& options = {});

/// Writes the model as versioned human-readable JSON. Doubles are serialized
/// at round-trip precision, so a loaded model classifies identically.
void save_model(const DiscriminantModel& model,
                const EstimatorConfig& estimator,
                const std::vector<std::string>& groupLabels,
                const std::filesystem::path& path);

struct LoadedModel {
  DiscriminantModel model;
  EstimatorConfig estimator;
  std::vector<std::string> groupLabels;
};

/// Throws ParseError on malformed or truncated files, SchemaError on
/// structural problems, VersionError on unsupported versions.
LoadedModel load_model(const std::filesystem::path& path);

void save_report(const ExperimentReport& report,
                 const std::filesystem::path& path);
ExperimentReport load_report(const std::filesystem::path& path);

/// lambda plus xi_q(lambda) per discriminant, `gridSize` rows.
void emit_weight_functions(const DiscriminantModel& model, int gridSize,
                           const std::filesystem::path& path);

/// epoch_id, group, d_1 (and d_2 when available) per vector. Returns a
/// warning string when the model has fewer than two discriminants, empty
/// otherwise. Models with Q = 0 are rejected.
std::string emit_discriminant_scatter(const DiscriminantModel& model,
                                      const std::vector<CepstralVector>& vectors,
                                      const std::vector<std::string>& groupLabels,
                                      const std::filesystem::path& path);

/// lambda plus one log-spectrum column per estimate over the nonredundant
/// ordinates. All estimates must share one grid; `ids` name the columns.
void emit_log_spectra(const std::vector<LogSpectrumEstimate>& estimates,
                      const std::vector<std::string>& ids,
                      const std::filesystem::path& path);

/// One row per candidate truncation with its misclassification count,
/// validity and whether it was selected.
void emit_cv_curve(const CvSelection& selection,
                   const std::filesystem::path& path);

/// Writes content through a temp file in the same directory plus rename, so
/// readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace cepdisc
