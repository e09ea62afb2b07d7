#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace slowsound {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iterative method ran out of budget. Carries the last error estimate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_estimate)
      : Error(format(what, last_estimate)),
        last_estimate_(last_estimate) {}
  double last_estimate() const noexcept { return last_estimate_; }

 private:
  static std::string format(const std::string& what, double estimate) {
    std::ostringstream os;
    os << what << " (last estimate " << estimate << ")";
    return os.str();
  }
  double last_estimate_;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf or runaway drift detected during time stepping.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Grid too coarse for the requested physics; `suggested` is a usable spacing.
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, double suggested)
      : Error(what), suggested_(suggested) {}
  double suggested() const noexcept { return suggested_; }

 private:
  double suggested_;
};

/// Parameter validation failure; lists every violated invariant.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> failures)
      : Error(join(failures)), failures_(std::move(failures)) {}
  const std::vector<std::string>& failures() const noexcept { return failures_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "invalid parameters:";
    for (const auto& s : items) out += "\n  - " + s;
    return out;
  }
  std::vector<std::string> failures_;
};

/// Malformed configuration file or override.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace slowsound
