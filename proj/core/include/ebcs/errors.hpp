#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ebcs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration (alpha outside (0,1), kappa <= 0, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An argument or observation outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or out-of-range input data; carries the 1-based line number.
class DataError : public DomainError {
 public:
  DataError(const std::string& what, std::size_t line)
      : DomainError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Root finder or eigensolver failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine was called outside its precondition.
class PreconditionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace ebcs
