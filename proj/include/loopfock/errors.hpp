#pragma once

#include <stdexcept>
#include <string>

namespace loopfock {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a truncated computation cannot certify its result.
class InsufficientPrecision : public Error {
 public:
  explicit InsufficientPrecision(const std::string& what)
      : Error("insufficient precision: " + what) {}
};

class ZeroUpToPrecision : public Error {
 public:
  explicit ZeroUpToPrecision(const std::string& what)
      : Error("zero up to precision: " + what) {}
};

class Singular : public Error {
 public:
  explicit Singular(const std::string& what) : Error("singular: " + what) {}
};

class NotInvertible : public Error {
 public:
  explicit NotInvertible(const std::string& what)
      : Error("not invertible: " + what) {}
};

class WindowExhausted : public Error {
 public:
  explicit WindowExhausted(const std::string& what)
      : Error("window exhausted: " + what) {}
};

class DepthOverflow : public Error {
 public:
  explicit DepthOverflow(const std::string& what)
      : Error("depth overflow: " + what) {}
};

class DimensionTooLarge : public Error {
 public:
  explicit DimensionTooLarge(const std::string& what)
      : Error("dimension too large: " + what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : Error("budget exceeded: " + what) {}
};

class NotProportional : public Error {
 public:
  explicit NotProportional(const std::string& what)
      : Error("not proportional: " + what) {}
};

class NotEigenfunction : public Error {
 public:
  explicit NotEigenfunction(const std::string& what)
      : Error("not an eigenfunction: " + what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error("invalid argument: " + what) {}
};

}  // namespace loopfock
