#pragma once

#include <stdexcept>
#include <string>

namespace distmul {

enum class ErrorKind {
  UnsupportedOrder,
  Parity,
  DivergentMoment,
  Domain,
  OnSupport,
  OutsideValidity,
  Precondition,
  NumericFailure,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Thrown when adaptive quadrature runs out of subdivisions. Carries the
// partial result so callers can report diagnostics.
class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& what, double partial_value,
                 double error_estimate, long evaluations)
      : Error(ErrorKind::NumericFailure, what),
        partial_value_(partial_value),
        error_estimate_(error_estimate),
        evaluations_(evaluations) {}

  double partial_value() const noexcept { return partial_value_; }
  double error_estimate() const noexcept { return error_estimate_; }
  long evaluations() const noexcept { return evaluations_; }

 private:
  double partial_value_;
  double error_estimate_;
  long evaluations_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace distmul
