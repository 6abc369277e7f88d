#pragma once

#include <stdexcept>
#include <string>

namespace hybridrat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// exact-series
class DivisionByZero : public Error {
 public:
  using Error::Error;
};
/// A result depends on digits beyond a truncation order. Raising the precision and retrying may help.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};
class NegativeValuation : public Error {
 public:
  using Error::Error;
};
class IncompatibleRamification : public Error {
 public:
  using Error::Error;
};
class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

// ratmap
class DegenerateMap : public Error {
 public:
  using Error::Error;
};
class AllZero : public Error {
 public:
  using Error::Error;
};
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// hybrid-limit
class SampleUndefined : public Error {
 public:
  using Error::Error;
};

// cli input
class InputError : public Error {
 public:
  using Error::Error;
};
class SyntaxError : public InputError {
 public:
  SyntaxError(const std::string& what, int line, int column)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};
class ArityError : public InputError {
 public:
  using InputError::InputError;
};
class DegreeError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace hybridrat
