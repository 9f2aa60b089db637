#pragma once

#include <stdexcept>
#include <string>

namespace nssing {

/// Input outside an operation's domain (bad parameter, point at the origin, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative method ran out of iterations.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field evaluation produced a non-finite value or failed at a node.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nssing
