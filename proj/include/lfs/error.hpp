#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lfs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: violated preconditions, malformed configuration, forbidden angles.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A formula was asked for a point outside the range where it holds
/// (e.g. the exact Born amplitude for k > alpha).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to reach the requested accuracy. The best
/// estimate available when the procedure gave up is attached.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, std::complex<double> estimate = {},
                 double error_estimate = 0.0)
      : Error(what), estimate_(estimate), error_estimate_(error_estimate) {}

  std::complex<double> estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  std::complex<double> estimate_;
  double error_estimate_;
};

}  // namespace lfs
