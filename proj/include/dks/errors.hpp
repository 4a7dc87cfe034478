#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dks {

// Precondition violations: bad sizes, out-of-range ids, invalid parameters.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed edge-list, CSV or cache input. line() is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Non-finite values inside an iterative method. Carries the last finite
// iterate when one exists so callers can still round something feasible.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, long iteration,
                 std::vector<double> last_finite = {})
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration),
        last_finite_(std::move(last_finite)) {}

  long iteration() const { return iteration_; }
  const std::vector<double>& last_finite_iterate() const { return last_finite_; }

 private:
  long iteration_;
  std::vector<double> last_finite_;
};

}  // namespace dks
