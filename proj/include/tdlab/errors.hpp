#pragma once

#include <stdexcept>
#include <string>

#include "tdlab/report.hpp"

namespace tdlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate or inadmissible q-Racah parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed rational, matrix or instance text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Shape mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant that must hold for any valid instance did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A candidate failed one or more tridiagonal-pair axioms; the report holds the witnesses.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, VerificationReport report)
      : Error(what), report_(std::move(report)) {}
  [[nodiscard]] const VerificationReport& report() const { return report_; }

 private:
  VerificationReport report_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tdlab
