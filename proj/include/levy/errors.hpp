#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace levy {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input. `field()` is a dotted/indexed path such as
/// "down.phases.T[0][0]" so callers can point at the offending entry.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)),
        message_(message) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }

  /// Re-raise with `prefix` prepended to the field path.
  [[noreturn]] void rethrow_under(const std::string& prefix) const {
    throw ValidationError(field_.empty() ? prefix : prefix + "." + field_,
                          message_);
  }

 private:
  std::string field_;
  std::string message_;
};

/// Operation called on a model outside the class it supports
/// (e.g. a spectrally negative routine on a model with upward jumps).
class ModelClassError : public Error {
 public:
  using Error::Error;
};

/// A rational transform was evaluated at (or numerically on top of) a pole.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, std::complex<double> pole)
      : Error(what), pole_(pole) {}
  std::complex<double> pole() const noexcept { return pole_; }

 private:
  std::complex<double> pole_;
};

/// Root/pole bookkeeping or partial-fraction reconstruction failed.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// A limit or query the library does not evaluate (e.g. alpha = 0 without
/// drift to +infinity).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace levy
