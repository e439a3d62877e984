#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace incw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments, bad configuration, or malformed files. The CLI maps these to exit code 1.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Field or vector shapes that do not agree with the grid or with each other.
class DimensionError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InvalidInput(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Failures of the discretized solvers. The CLI maps these to exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A non-finite value appeared while marching in time.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& solver, std::size_t time_index,
                  std::optional<std::size_t> iteration = std::nullopt)
      : NumericalError(compose(solver, time_index, iteration)),
        solver_(solver),
        time_index_(time_index),
        iteration_(iteration) {}

  const std::string& solver() const noexcept { return solver_; }
  std::size_t time_index() const noexcept { return time_index_; }
  std::optional<std::size_t> iteration() const noexcept { return iteration_; }

  DivergenceError at_iteration(std::size_t k) const { return {solver_, time_index_, k}; }

 private:
  static std::string compose(const std::string& solver, std::size_t time_index,
                             std::optional<std::size_t> iteration) {
    std::string msg = solver + " diverged: non-finite value at time index " + std::to_string(time_index);
    if (iteration) msg += " (optimizer iteration " + std::to_string(*iteration) + ")";
    return msg;
  }

  std::string solver_;
  std::size_t time_index_;
  std::optional<std::size_t> iteration_;
};

}  // namespace incw
