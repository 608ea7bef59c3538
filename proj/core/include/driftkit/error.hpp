#pragma once

#include <stdexcept>
#include <string>

namespace driftkit {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument values (negative rates, empty lists, out-of-range indices).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Syntax error in an expression; `position` is the byte offset of the problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A mathematical function was evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed chain: bad row sums, dangling indices, unreachable targets.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A theorem's hypothesis was checked and found violated. `witness` names the
// offending state, point or index pair.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, std::string witness)
      : Error(what + " (witness: " + witness + ")"), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

// State-space guard exceeded (chain too large to build or solve).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature failed to reach tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

// Monte Carlo run produced no usable trials.
class EstimationError : public Error {
 public:
  using Error::Error;
};

}  // namespace driftkit
