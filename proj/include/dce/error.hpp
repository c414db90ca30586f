#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dce {

enum class ErrorKind {
  Domain,        // argument outside the mathematical domain of an operation
  Precondition,  // caller violated a documented precondition
  Numeric,       // a numerical method failed to converge
  Range,         // evaluation requested outside a solved/tabulated range
  Validation,    // scenario or input-file validation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& w)
      : Error(ErrorKind::Precondition, w) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& w) : Error(ErrorKind::Range, w) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& w)
      : Error(ErrorKind::Validation, w) {}
};

/// Non-fatal advisories attached to results (regime checks, near-miss
/// resonances and the like).
using Warnings = std::vector<std::string>;

const char* to_string(ErrorKind kind) noexcept;

}  // namespace dce
