#pragma once

#include <stdexcept>
#include <string>

namespace fks {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (bad order, negative base in strict mode, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gamma function evaluated at a non-positive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Series or iteration failed to reach its stopping criterion.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A physical invariant (trace, hermiticity, positivity) was violated.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Density at or below the division floor inside an evaluation window.
class DensityUnderflow : public Error {
 public:
  using Error::Error;
};

class GaugeMismatch : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A snapshot lacks one of the derivative fields an operation consumes.
class MissingField : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Run of non-finite samples longer than the repair limit.
class UnrepairableSingularity : public Error {
 public:
  UnrepairableSingularity(const std::string& what, double x_begin, double x_end, std::size_t run)
      : Error(what), x_begin_(x_begin), x_end_(x_end), run_(run) {}

  double x_begin() const noexcept { return x_begin_; }
  double x_end() const noexcept { return x_end_; }
  std::size_t run_length() const noexcept { return run_; }

 private:
  double x_begin_;
  double x_end_;
  std::size_t run_;
};

}  // namespace fks
