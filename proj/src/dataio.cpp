#include "cepdisc/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cepdisc/smoothing_spline.hpp"
#include "cepdisc/spectral.hpp"

namespace cepdisc {

namespace {

using nlohmann::json;

constexpr const char* kCorpusHeader = "epoch_id\tgroup\tt\tvalue";
constexpr const char* kModelFormat = "cepdisc-model";
constexpr const char* kReportFormat = "cepdisc-report";
constexpr int kFormatVersion = 1;

std::string format_double(double value) {
  char buffer[32];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  for (;;) {
    const size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

int parse_int_field(const std::string& field, long line) {
  int value = 0;
  const auto result =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (result.ec != std::errc() || result.ptr != field.data() + field.size()) {
    throw ParseError("'" + field + "' is not an integer", line);
  }
  return value;
}

double parse_double_field(const std::string& field, long line) {
  double value = 0.0;
  const auto result =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (result.ec != std::errc() || result.ptr != field.data() + field.size()) {
    throw ParseError("'" + field + "' is not a number", line);
  }
  return value;
}

std::string read_whole_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

EpochCorpus read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open corpus file '" + path.string() +
                                "'");
  }
  EpochCorpus corpus;
  std::string line;
  long lineNumber = 0;
  if (!std::getline(in, line)) return corpus;  // empty file, empty corpus
  ++lineNumber;
  chomp(line);
  if (line != kCorpusHeader) {
    throw ParseError(
        "corpus header must be 'epoch_id<TAB>group<TAB>t<TAB>value'",
        lineNumber);
  }

  std::map<std::string, int> labelIndex;
  std::set<std::string> seenIds;
  std::string currentId;
  std::string currentGroup;
  int expectedT = 0;

  while (std::getline(in, line)) {
    ++lineNumber;
    chomp(line);
    if (line.empty()) {
      if (in.eof()) break;  // trailing newline
      throw ParseError("blank line inside corpus", lineNumber);
    }
    const std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 4) {
      throw ParseError("expected 4 tab-separated fields, got " +
                           std::to_string(fields.size()),
                       lineNumber);
    }
    const std::string& id = fields[0];
    const std::string& group = fields[1];
    if (id.empty()) throw ParseError("empty epoch_id", lineNumber);
    const int t = parse_int_field(fields[2], lineNumber);
    const double value = parse_double_field(fields[3], lineNumber);

    if (id != currentId) {
      if (seenIds.count(id)) {
        throw SchemaError("epoch '" + id +
                          "' appears in non-contiguous blocks (line " +
                          std::to_string(lineNumber) + ")");
      }
      seenIds.insert(id);
      currentId = id;
      currentGroup = group;
      TimeSeriesEpoch epoch;
      epoch.id = id;
      if (!group.empty() && group != "-") {
        auto it = labelIndex.find(group);
        if (it == labelIndex.end()) {
          corpus.groupLabels.push_back(group);
          it = labelIndex
                   .emplace(group, static_cast<int>(corpus.groupLabels.size()))
                   .first;
        }
        epoch.group = it->second;
      }
      corpus.epochs.push_back(std::move(epoch));
      expectedT = 1;
    } else if (group != currentGroup) {
      throw SchemaError("epoch '" + id + "' changes group mid-block (line " +
                        std::to_string(lineNumber) + ")");
    }
    if (t != expectedT) {
      throw SchemaError("epoch '" + id + "' has t=" + std::to_string(t) +
                        " where t=" + std::to_string(expectedT) +
                        " was expected (line " + std::to_string(lineNumber) +
                        ")");
    }
    corpus.epochs.back().values.push_back(value);
    ++expectedT;
  }

  for (const TimeSeriesEpoch& epoch : corpus.epochs) {
    if (epoch.length() != corpus.epochs.front().length()) {
      throw SchemaError(
          "epoch '" + epoch.id + "' has N=" + std::to_string(epoch.length()) +
          " but the corpus uses N=" +
          std::to_string(corpus.epochs.front().length()));
    }
  }
  return corpus;
}

void write_corpus(const EpochCorpus& corpus,
                  const std::filesystem::path& path) {
  std::string out = kCorpusHeader;
  out += '\n';
  for (const TimeSeriesEpoch& epoch : corpus.epochs) {
    if (epoch.id.empty()) {
      throw std::invalid_argument("cannot write an epoch without an id");
    }
    std::string label = "-";
    if (epoch.group) {
      const int j = *epoch.group;
      if (j < 1 || j > static_cast<int>(corpus.groupLabels.size())) {
        throw std::invalid_argument(
            "epoch '" + epoch.id + "' references group " + std::to_string(j) +
            " outside the label dictionary");
      }
      label = corpus.groupLabels[j - 1];
    }
    for (int t = 0; t < epoch.length(); ++t) {
      out += epoch.id;
      out += '\t';
      out += label;
      out += '\t';
      out += std::to_string(t + 1);
      out += '\t';
      out += format_double(epoch.values[t]);
      out += '\n';
    }
  }
  write_file_atomic(path, out);
}

StrideRecord read_stride_record(const std::filesystem::path& path,
                                std::string group, std::string id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open stride record '" + path.string() +
                                "'");
  }
  StrideRecord record;
  record.id = id.empty() ? path.stem().string() : std::move(id);
  record.group = std::move(group);

  std::string line;
  long lineNumber = 0;
  while (std::getline(in, line)) {
    ++lineNumber;
    chomp(line);
    std::istringstream stream(line);
    std::string first, second;
    if (!(stream >> first)) continue;  // blank line
    if (!(stream >> second)) {
      throw ParseError("expected two columns (event time, stride interval)",
                       lineNumber);
    }
    record.eventTimes.push_back(parse_double_field(first, lineNumber));
    record.intervals.push_back(parse_double_field(second, lineNumber));
  }
  if (record.eventTimes.empty()) {
    throw SchemaError("stride record '" + record.id + "' has no samples");
  }
  for (size_t i = 0; i < record.eventTimes.size(); ++i) {
    if (i > 0 && !(record.eventTimes[i] > record.eventTimes[i - 1])) {
      throw SchemaError("stride record '" + record.id +
                        "' has non-increasing event times at sample " +
                        std::to_string(i + 1));
    }
    if (!(record.intervals[i] > 0.0) || !std::isfinite(record.intervals[i])) {
      throw SchemaError("stride record '" + record.id +
                        "' has a non-positive interval at sample " +
                        std::to_string(i + 1));
    }
  }
  return record;
}

namespace {

// Centered running median; the window is clipped at the boundaries. Even
// clipped windows use the mean of the two central order statistics.
std::vector<double> running_median(const std::vector<double>& values,
                                   int window) {
  const int n = static_cast<int>(values.size());
  const int half = window / 2;
  std::vector<double> medians(static_cast<size_t>(n));
  std::vector<double> scratch;
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - half);
    const int hi = std::min(n - 1, i + half);
    scratch.assign(values.begin() + lo, values.begin() + hi + 1);
    std::sort(scratch.begin(), scratch.end());
    const size_t m = scratch.size();
    medians[i] = m % 2 == 1
                     ? scratch[m / 2]
                     : (scratch[m / 2 - 1] + scratch[m / 2]) / 2.0;
  }
  return medians;
}

}  // namespace

TimeSeriesEpoch gait_preprocess(const StrideRecord& record,
                                const GaitPreprocessOptions& options) {
  if (options.startupSeconds < 0.0 || !(options.durationSeconds > 0.0) ||
      !(options.sampleHz > 0.0)) {
    throw std::invalid_argument("invalid preprocessing window");
  }
  if (options.medianWindow < 1 || options.medianWindow % 2 == 0) {
    throw std::invalid_argument("median window must be odd and >= 1");
  }
  if (!(options.sdThreshold > 0.0)) {
    throw std::invalid_argument("SD threshold must be positive");
  }
  if (options.splineLambda < 0.0) {
    throw std::invalid_argument("spline penalty must be >= 0");
  }
  if (record.eventTimes.size() != record.intervals.size()) {
    throw std::invalid_argument("stride record columns differ in length");
  }

  const double start = options.startupSeconds;
  const double end = start + options.durationSeconds;
  if (record.eventTimes.empty() || record.eventTimes.back() < end) {
    const double available =
        record.eventTimes.empty() ? 0.0 : record.eventTimes.back();
    throw std::invalid_argument(
        "stride record '" + record.id + "' spans " + format_double(available) +
        " s but preprocessing needs " + format_double(end) + " s");
  }

  std::vector<double> times, intervals;
  for (size_t i = 0; i < record.eventTimes.size(); ++i) {
    const double t = record.eventTimes[i];
    if (t < start || t > end) continue;
    times.push_back(t);
    intervals.push_back(record.intervals[i]);
  }
  if (times.size() < 8) {
    throw std::invalid_argument("stride record '" + record.id + "' has only " +
                                std::to_string(times.size()) +
                                " strides inside the analysis window");
  }

  // Replace turnaround artifacts: anything beyond sdThreshold sample SDs of
  // the running median becomes the median itself.
  const std::vector<double> medians =
      running_median(intervals, options.medianWindow);
  double mean = 0.0;
  for (double v : intervals) mean += v;
  mean /= static_cast<double>(intervals.size());
  double ss = 0.0;
  for (double v : intervals) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (intervals.size() - 1));
  std::vector<double> cleaned(intervals.size());
  for (size_t i = 0; i < intervals.size(); ++i) {
    const bool outlier =
        std::abs(intervals[i] - medians[i]) > options.sdThreshold * sd;
    cleaned[i] = outlier ? medians[i] : intervals[i];
  }

  const SmoothingSpline spline =
      options.splineLambda > 0.0
          ? SmoothingSpline(times, cleaned, options.splineLambda)
          : SmoothingSpline::fit_gcv(times, cleaned);

  const int sampleCount = static_cast<int>(
      std::lround(options.durationSeconds * options.sampleHz));
  std::vector<double> values(static_cast<size_t>(sampleCount));
  for (int k = 0; k < sampleCount; ++k) {
    values[k] = spline(start + k / options.sampleHz);
  }

  // Least-squares detrend over the sample index.
  const double xBar = (sampleCount - 1) / 2.0;
  double sxx = 0.0, sxy = 0.0, yBar = 0.0;
  for (int k = 0; k < sampleCount; ++k) yBar += values[k];
  yBar /= sampleCount;
  for (int k = 0; k < sampleCount; ++k) {
    sxx += (k - xBar) * (k - xBar);
    sxy += (k - xBar) * (values[k] - yBar);
  }
  const double slope = sxy / sxx;
  for (int k = 0; k < sampleCount; ++k) {
    values[k] -= yBar + slope * (k - xBar);
  }

  TimeSeriesEpoch epoch;
  epoch.id = record.id;
  epoch.values = std::move(values);
  return epoch;
}

EpochCorpus load_gait_directory(const std::filesystem::path& directory,
                                const GaitPreprocessOptions& options) {
  if (!std::filesystem::is_directory(directory)) {
    throw std::invalid_argument("'" + directory.string() +
                                "' is not a directory");
  }
  struct Entry {
    std::string prefix;
    int number = 0;
    std::filesystem::path path;
  };
  std::vector<Entry> entries;
  for (const auto& item : std::filesystem::directory_iterator(directory)) {
    if (!item.is_regular_file()) continue;
    const std::string stem = item.path().stem().string();
    size_t split = 0;
    while (split < stem.size() && std::isalpha(
               static_cast<unsigned char>(stem[split]))) {
      ++split;
    }
    if (split == 0 || split == stem.size()) continue;
    bool digits = true;
    for (size_t i = split; i < stem.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(stem[i]))) digits = false;
    }
    if (!digits) continue;
    Entry entry;
    entry.prefix = stem.substr(0, split);
    entry.number = std::stoi(stem.substr(split));
    entry.path = item.path();
    entries.push_back(std::move(entry));
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.prefix != b.prefix) return a.prefix < b.prefix;
    return a.number < b.number;
  });

  EpochCorpus corpus;
  std::map<std::string, int> labelIndex;
  for (const Entry& entry : entries) {
    const StrideRecord record =
        read_stride_record(entry.path, entry.prefix);
    TimeSeriesEpoch epoch = gait_preprocess(record, options);
    auto it = labelIndex.find(entry.prefix);
    if (it == labelIndex.end()) {
      corpus.groupLabels.push_back(entry.prefix);
      it = labelIndex
               .emplace(entry.prefix,
                        static_cast<int>(corpus.groupLabels.size()))
               .first;
    }
    epoch.group = it->second;
    corpus.epochs.push_back(std::move(epoch));
  }
  return corpus;
}

namespace {

json matrix_to_json(const Eigen::MatrixXd& matrix) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) row.push_back(matrix(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& vector) {
  json values = json::array();
  for (Eigen::Index i = 0; i < vector.size(); ++i) values.push_back(vector[i]);
  return values;
}

const json& require_field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw SchemaError(std::string("missing field '") + key + "'");
  }
  return *it;
}

Eigen::MatrixXd matrix_from_json(const json& rows, Eigen::Index expectedRows,
                                 Eigen::Index expectedCols, const char* name) {
  if (!rows.is_array() ||
      static_cast<Eigen::Index>(rows.size()) != expectedRows) {
    throw SchemaError(std::string("field '") + name + "' must be an array of " +
                      std::to_string(expectedRows) + " rows");
  }
  Eigen::MatrixXd matrix(expectedRows, expectedCols);
  for (Eigen::Index i = 0; i < expectedRows; ++i) {
    const json& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() ||
        static_cast<Eigen::Index>(row.size()) != expectedCols) {
      throw SchemaError(std::string("field '") + name + "' row " +
                        std::to_string(i) + " must hold " +
                        std::to_string(expectedCols) + " numbers");
    }
    for (Eigen::Index j = 0; j < expectedCols; ++j) {
      const json& cell = row[static_cast<size_t>(j)];
      if (!cell.is_number()) {
        throw SchemaError(std::string("field '") + name +
                          "' contains a non-numeric cell");
      }
      matrix(i, j) = cell.get<double>();
    }
  }
  return matrix;
}

Eigen::VectorXd vector_from_json(const json& values, Eigen::Index expectedSize,
                                 const char* name) {
  if (!values.is_array() ||
      static_cast<Eigen::Index>(values.size()) != expectedSize) {
    throw SchemaError(std::string("field '") + name + "' must be an array of " +
                      std::to_string(expectedSize) + " numbers");
  }
  Eigen::VectorXd vector(expectedSize);
  for (Eigen::Index i = 0; i < expectedSize; ++i) {
    const json& cell = values[static_cast<size_t>(i)];
    if (!cell.is_number()) {
      throw SchemaError(std::string("field '") + name +
                        "' contains a non-numeric cell");
    }
    vector[i] = cell.get<double>();
  }
  return vector;
}

int require_int(const json& doc, const char* key) {
  const json& field = require_field(doc, key);
  if (!field.is_number_integer()) {
    throw SchemaError(std::string("field '") + key + "' must be an integer");
  }
  return field.get<int>();
}

json parse_document(const std::filesystem::path& path, const char* format) {
  json doc;
  try {
    doc = json::parse(read_whole_file(path));
  } catch (const json::parse_error& error) {
    throw ParseError("'" + path.string() + "' is not well-formed: " +
                     error.what());
  }
  if (!doc.is_object()) {
    throw SchemaError("'" + path.string() + "' does not hold an object");
  }
  const json& seen = require_field(doc, "format");
  if (!seen.is_string() || seen.get<std::string>() != format) {
    throw SchemaError("'" + path.string() + "' is not a " +
                      std::string(format) + " file");
  }
  const int version = require_int(doc, "version");
  if (version != kFormatVersion) {
    throw VersionError("'" + path.string() + "' uses format version " +
                       std::to_string(version) + "; this build supports " +
                       std::to_string(kFormatVersion));
  }
  return doc;
}

json estimator_to_json(const EstimatorConfig& config) {
  json doc;
  doc["kind"] = to_string(config.kind);
  doc["tapers"] = config.tapers;
  doc["span"] = config.span;
  doc["normalizedPeriodogram"] = config.options.normalizedPeriodogram;
  doc["jitter"] = config.options.jitter;
  return doc;
}

EstimatorConfig estimator_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw SchemaError("field 'estimator' must be an object");
  }
  EstimatorConfig config;
  const json& kind = require_field(doc, "kind");
  if (!kind.is_string()) throw SchemaError("estimator kind must be a string");
  config.kind = estimator_kind_from_string(kind.get<std::string>());
  config.tapers = require_int(doc, "tapers");
  config.span = require_int(doc, "span");
  const json& normalized = require_field(doc, "normalizedPeriodogram");
  if (!normalized.is_boolean()) {
    throw SchemaError("field 'normalizedPeriodogram' must be a boolean");
  }
  config.options.normalizedPeriodogram = normalized.get<bool>();
  const json& jitter = require_field(doc, "jitter");
  if (!jitter.is_number()) throw SchemaError("field 'jitter' must be numeric");
  config.options.jitter = jitter.get<double>();
  validate(config);
  return config;
}

}  // namespace

void save_model(const DiscriminantModel& model,
                const EstimatorConfig& estimator,
                const std::vector<std::string>& groupLabels,
                const std::filesystem::path& path) {
  if (!groupLabels.empty() &&
      static_cast<int>(groupLabels.size()) != model.groupCount) {
    throw std::invalid_argument("label dictionary size " +
                                std::to_string(groupLabels.size()) +
                                " does not match J=" +
                                std::to_string(model.groupCount));
  }
  json doc;
  doc["format"] = kModelFormat;
  doc["version"] = kFormatVersion;
  doc["L"] = model.truncation;
  doc["J"] = model.groupCount;
  doc["Q"] = model.components;
  doc["priors"] = vector_to_json(model.priors);
  doc["groupMeans"] = matrix_to_json(model.groupMeans);
  doc["pooledWithin"] = matrix_to_json(model.pooledWithin);
  doc["between"] = matrix_to_json(model.between);
  doc["weights"] = matrix_to_json(model.weights.transpose());
  doc["eigenvalues"] = vector_to_json(model.eigenvalues);
  doc["groupMeanScores"] = matrix_to_json(model.groupMeanScores);
  doc["estimator"] = estimator_to_json(estimator);
  doc["groupLabels"] = groupLabels;
  write_file_atomic(path, doc.dump(2) + "\n");
}

LoadedModel load_model(const std::filesystem::path& path) {
  const json doc = parse_document(path, kModelFormat);

  LoadedModel loaded;
  DiscriminantModel& model = loaded.model;
  model.truncation = require_int(doc, "L");
  model.groupCount = require_int(doc, "J");
  model.components = require_int(doc, "Q");
  if (model.truncation < 1 || model.groupCount < 2 || model.components < 0 ||
      model.components > std::min(model.groupCount - 1, model.truncation)) {
    throw SchemaError("model dimensions are inconsistent");
  }
  model.priors = vector_from_json(require_field(doc, "priors"),
                                  model.groupCount, "priors");
  model.groupMeans = matrix_from_json(require_field(doc, "groupMeans"),
                                      model.groupCount, model.truncation,
                                      "groupMeans");
  model.pooledWithin = matrix_from_json(require_field(doc, "pooledWithin"),
                                        model.truncation, model.truncation,
                                        "pooledWithin");
  model.between = matrix_from_json(require_field(doc, "between"),
                                   model.truncation, model.truncation,
                                   "between");
  model.weights = matrix_from_json(require_field(doc, "weights"),
                                   model.components, model.truncation,
                                   "weights")
                      .transpose();
  model.eigenvalues = vector_from_json(require_field(doc, "eigenvalues"),
                                       model.components, "eigenvalues");
  model.groupMeanScores = matrix_from_json(
      require_field(doc, "groupMeanScores"), model.groupCount,
      model.components, "groupMeanScores");
  loaded.estimator = estimator_from_json(require_field(doc, "estimator"));

  const json& labels = require_field(doc, "groupLabels");
  if (!labels.is_array()) {
    throw SchemaError("field 'groupLabels' must be an array");
  }
  for (const json& label : labels) {
    if (!label.is_string()) {
      throw SchemaError("group labels must be strings");
    }
    loaded.groupLabels.push_back(label.get<std::string>());
  }
  if (!loaded.groupLabels.empty() &&
      static_cast<int>(loaded.groupLabels.size()) != model.groupCount) {
    throw SchemaError("label dictionary does not match J");
  }
  return loaded;
}

void save_report(const ExperimentReport& report,
                 const std::filesystem::path& path) {
  json doc;
  doc["format"] = kReportFormat;
  doc["version"] = kFormatVersion;

  json config;
  json specs = json::array();
  for (const Ar2GroupSpec& spec : report.config.groupSpecs) {
    json entry;
    entry["phi1"] = {spec.phi1Low, spec.phi1High};
    entry["phi2"] = {spec.phi2Low, spec.phi2High};
    entry["sigma2"] = {spec.sigma2Low, spec.sigma2High};
    specs.push_back(std::move(entry));
  }
  config["groupSpecs"] = std::move(specs);
  config["epochsPerGroup"] = report.config.epochsPerGroup;
  config["testPerGroup"] = report.config.testPerGroup;
  config["length"] = report.config.length;
  config["reps"] = report.config.reps;
  config["seed"] = report.config.seed;
  json methods = json::array();
  for (Method method : report.config.methods) {
    methods.push_back(to_string(method));
  }
  config["methods"] = std::move(methods);
  config["truncationCandidates"] = report.config.truncationCandidates;
  config["tapers"] = report.config.tapers;
  config["threads"] = report.config.threads;
  doc["config"] = std::move(config);

  json summaries = json::array();
  for (const MethodSummary& summary : report.summaries) {
    json entry;
    entry["method"] = to_string(summary.method);
    entry["meanRate"] = summary.meanRate;
    entry["sdRate"] = summary.sdRate;
    entry["failedReps"] = summary.failedReps;
    entry["repRates"] = summary.repRates;  // NaN serializes as null
    summaries.push_back(std::move(entry));
  }
  doc["summaries"] = std::move(summaries);
  write_file_atomic(path, doc.dump(2) + "\n");
}

ExperimentReport load_report(const std::filesystem::path& path) {
  const json doc = parse_document(path, kReportFormat);
  ExperimentReport report;

  const json& config = require_field(doc, "config");
  if (!config.is_object()) throw SchemaError("field 'config' must be an object");
  const json& specs = require_field(config, "groupSpecs");
  if (!specs.is_array()) {
    throw SchemaError("field 'groupSpecs' must be an array");
  }
  const auto rangeOf = [](const json& entry, const char* key, double& low,
                          double& high) {
    const json& range = require_field(entry, key);
    if (!range.is_array() || range.size() != 2 || !range[0].is_number() ||
        !range[1].is_number()) {
      throw SchemaError(std::string("field '") + key +
                        "' must be a [low, high] pair");
    }
    low = range[0].get<double>();
    high = range[1].get<double>();
  };
  for (const json& entry : specs) {
    Ar2GroupSpec spec;
    rangeOf(entry, "phi1", spec.phi1Low, spec.phi1High);
    rangeOf(entry, "phi2", spec.phi2Low, spec.phi2High);
    rangeOf(entry, "sigma2", spec.sigma2Low, spec.sigma2High);
    report.config.groupSpecs.push_back(spec);
  }
  report.config.epochsPerGroup = require_int(config, "epochsPerGroup");
  report.config.testPerGroup = require_int(config, "testPerGroup");
  report.config.length = require_int(config, "length");
  report.config.reps = require_int(config, "reps");
  const json& seed = require_field(config, "seed");
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
    throw SchemaError("field 'seed' must be an integer");
  }
  report.config.seed = seed.get<std::uint64_t>();
  report.config.methods.clear();
  for (const json& name : require_field(config, "methods")) {
    if (!name.is_string()) throw SchemaError("methods must be strings");
    report.config.methods.push_back(method_from_string(name.get<std::string>()));
  }
  report.config.truncationCandidates.clear();
  for (const json& value : require_field(config, "truncationCandidates")) {
    if (!value.is_number_integer()) {
      throw SchemaError("truncation candidates must be integers");
    }
    report.config.truncationCandidates.push_back(value.get<int>());
  }
  report.config.tapers = require_int(config, "tapers");
  report.config.threads = require_int(config, "threads");

  for (const json& entry : require_field(doc, "summaries")) {
    MethodSummary summary;
    const json& method = require_field(entry, "method");
    if (!method.is_string()) throw SchemaError("method must be a string");
    summary.method = method_from_string(method.get<std::string>());
    const json& meanRate = require_field(entry, "meanRate");
    const json& sdRate = require_field(entry, "sdRate");
    if (!meanRate.is_number() || !sdRate.is_number()) {
      throw SchemaError("summary rates must be numeric");
    }
    summary.meanRate = meanRate.get<double>();
    summary.sdRate = sdRate.get<double>();
    summary.failedReps = require_int(entry, "failedReps");
    for (const json& rate : require_field(entry, "repRates")) {
      if (rate.is_null()) {
        summary.repRates.push_back(std::numeric_limits<double>::quiet_NaN());
      } else if (rate.is_number()) {
        summary.repRates.push_back(rate.get<double>());
      } else {
        throw SchemaError("rep rates must be numbers or null");
      }
    }
    report.summaries.push_back(std::move(summary));
  }
  return report;
}

void emit_weight_functions(const DiscriminantModel& model, int gridSize,
                           const std::filesystem::path& path) {
  if (model.components < 1) {
    throw std::invalid_argument(
        "model has no discriminant directions to plot");
  }
  if (gridSize < 1) throw std::invalid_argument("grid size must be >= 1");
  std::vector<std::vector<double>> curves;
  for (int q = 1; q <= model.components; ++q) {
    curves.push_back(weight_function(model, q, gridSize));
  }
  std::string out = "lambda";
  for (int q = 1; q <= model.components; ++q) {
    out += "\txi" + std::to_string(q);
  }
  out += '\n';
  for (int g = 0; g < gridSize; ++g) {
    out += format_double(static_cast<double>(g) / gridSize);
    for (const std::vector<double>& curve : curves) {
      out += '\t';
      out += format_double(curve[g]);
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

std::string emit_discriminant_scatter(
    const DiscriminantModel& model, const std::vector<CepstralVector>& vectors,
    const std::vector<std::string>& groupLabels,
    const std::filesystem::path& path) {
  if (model.components < 1) {
    throw std::invalid_argument("model has no discriminant directions");
  }
  const bool two = model.components >= 2;
  std::string out = two ? "epoch_id\tgroup\td1\td2" : "epoch_id\tgroup\td1";
  out += '\n';
  for (const CepstralVector& vector : vectors) {
    const Eigen::VectorXd scores = discriminant_scores(model, vector);
    std::string label = "-";
    if (vector.group) {
      const int j = *vector.group;
      label = j >= 1 && j <= static_cast<int>(groupLabels.size())
                  ? groupLabels[j - 1]
                  : std::to_string(j);
    }
    out += vector.id.empty() ? "-" : vector.id;
    out += '\t';
    out += label;
    out += '\t';
    out += format_double(scores[0]);
    if (two) {
      out += '\t';
      out += format_double(scores[1]);
    }
    out += '\n';
  }
  write_file_atomic(path, out);
  return two ? std::string()
             : "model has a single discriminant; emitting d1 only";
}

void emit_log_spectra(const std::vector<LogSpectrumEstimate>& estimates,
                      const std::vector<std::string>& ids,
                      const std::filesystem::path& path) {
  if (estimates.empty() || estimates.size() != ids.size()) {
    throw std::invalid_argument("need one id per log-spectrum estimate");
  }
  const int n = estimates.front().gridSize();
  for (const LogSpectrumEstimate& estimate : estimates) {
    if (estimate.gridSize() != n) {
      throw std::invalid_argument("log-spectra use mixed grid sizes");
    }
  }
  std::string out = "lambda";
  for (const std::string& id : ids) {
    out += '\t';
    out += id;
  }
  out += '\n';
  for (int m = 0; m <= n / 2; ++m) {
    out += format_double(static_cast<double>(m) / n);
    for (const LogSpectrumEstimate& estimate : estimates) {
      out += '\t';
      out += format_double(estimate.values[m]);
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

void emit_cv_curve(const CvSelection& selection,
                   const std::filesystem::path& path) {
  std::string out = "L\tmisclassified\tvalid\tselected\n";
  for (const CvCurveEntry& entry : selection.curve) {
    out += std::to_string(entry.truncation);
    out += '\t';
    out += std::to_string(entry.misclassified);
    out += '\t';
    out += entry.valid ? "1" : "0";
    out += '\t';
    out += entry.truncation == selection.bestTruncation ? "1" : "0";
    out += '\n';
  }
  write_file_atomic(path, out);
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::invalid_argument("cannot write '" + temp.string() + "'");
    }
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(temp);
      throw std::runtime_error("failed writing '" + temp.string() + "'");
    }
  }
  std::error_code code;
  std::filesystem::rename(temp, path, code);
  if (code) {
    std::filesystem::remove(temp);
    throw std::runtime_error("cannot move temp file onto '" + path.string() +
                             "': " + code.message());
  }
}

}  // namespace cepdisc
