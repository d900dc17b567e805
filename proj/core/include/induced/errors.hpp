#pragma once

#include <stdexcept>
#include <string>

namespace induced {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input violates a general-position or rank assumption at the active tolerance.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// Hyperplane coefficient vector has an all-zero normal part.
class ZeroNormal : public DegenerateInput {
 public:
  using DegenerateInput::DegenerateInput;
};

// Ordered tuple count not divisible by the expected multiplicity; signals a
// violated general-position assumption.
class NonDivisibleCount : public DegenerateInput {
 public:
  using DegenerateInput::DegenerateInput;
};

// A point lies on the fixed split hyperplane of the convex counting scheme.
class OnHyperplane : public DegenerateInput {
 public:
  using DegenerateInput::DegenerateInput;
};

class InvalidEpsilon : public Error {
 public:
  using Error::Error;
};

class UnsupportedDim : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Sampling requested from an empty candidate range.
class EmptyRange : public Error {
 public:
  using Error::Error;
};

class InvalidRectangle : public Error {
 public:
  using Error::Error;
};

// Random-sample cutting failed to satisfy the 1/r property after bounded retries.
class CuttingFailure : public Error {
 public:
  using Error::Error;
};

// Enumeration size exceeds the configured oracle budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Malformed instance file.  `line` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace induced
