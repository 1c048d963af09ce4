#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace et {

// Base type for failures reported by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Expression text rejected by the parser; byte_offset points into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t byte_offset)
      : Error(message + " (byte " + std::to_string(byte_offset) + ")"),
        byte_offset(byte_offset) {}

  std::size_t byte_offset;
};

// Evaluation left the real domain (square root of a negative, logarithm of a
// non-positive, division by zero, ...); the offending sub-expression is kept
// in printable form.
class EvalDomainError : public Error {
 public:
  EvalDomainError(const std::string& message, std::string subexpression)
      : Error(message + " in '" + subexpression + "'"),
        subexpression(std::move(subexpression)) {}

  std::string subexpression;
};

// Argument below the branch point -1/e of the real branch W0.
class LambertDomainError : public Error {
 public:
  explicit LambertDomainError(double z);

  double z;
};

// The stationarity residual never changes sign on the scan grid.
class NoRootError : public Error {
 public:
  using Error::Error;
};

// Everywhere-attractive potential with no negative-energy solution: the
// approximate energy carries no information for a bound-state problem.
class IrrelevantEnergyError : public Error {
 public:
  explicit IrrelevantEnergyError(const std::string& message,
                                 std::optional<double> energy = std::nullopt)
      : Error(message), energy(energy) {}

  std::optional<double> energy;
};

// Reference-table file rejected; line numbers are 1-based.
class ReferenceFileError : public Error {
 public:
  ReferenceFileError(const std::string& message, std::size_t line)
      : Error(message + " (line " + std::to_string(line) + ")"), line(line) {}

  std::size_t line;
};

}  // namespace et
