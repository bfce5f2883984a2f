#pragma once

#include <stdexcept>
#include <string>

namespace modgrad {

// Malformed arguments: dimension mismatch, schema violation, out-of-range
// parameters. The CLI maps this family to exit code 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Evaluation at a pole of a Moebius-type node.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Iterative method failed to converge. Carries the best iterate value.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double best)
      : std::runtime_error(what), best_(best) {}
  double best() const noexcept { return best_; }

 private:
  double best_;
};

// A map that was supposed to send the ball into the ball did not.
class CertificationError : public std::runtime_error {
 public:
  explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

// Hypothesis of a diagnostic is not satisfied (distinct from a negative result).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace modgrad
