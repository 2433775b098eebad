#pragma once

#include <stdexcept>
#include <string>

namespace cepdisc {

/// A periodogram or smoothed spectrum is exactly zero at some bin, so its
/// logarithm is undefined. Callers may retry with a positive jitter option.
class DegenerateSpectrumError : public std::runtime_error {
 public:
  explicit DegenerateSpectrumError(const std::string& what)
      : std::runtime_error(what) {}
};

/// The pooled within-group covariance is numerically singular.
class IllConditionedError : public std::runtime_error {
 public:
  IllConditionedError(const std::string& what, double eigenvalue_ratio)
      : std::runtime_error(what), eigenvalueRatio(eigenvalue_ratio) {}

  /// Smallest-to-largest eigenvalue ratio of the offending matrix.
  double eigenvalueRatio;
};

/// Malformed file content. `line` is 1-based when known, -1 otherwise.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, long line = -1)
      : std::runtime_error(what), line(line) {}
  long line;
};

/// Structurally valid file whose contents violate a corpus or model constraint.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// Persisted file written with an unsupported format version.
class VersionError : public std::runtime_error {
 public:
  explicit VersionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cepdisc
