#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace admd {

/// Element of the primal space E.
using Point = Eigen::VectorXd;

/// Element of the dual space E* (subgradients, mirror-step directions).
using DualVector = Eigen::VectorXd;

using Matrix = Eigen::MatrixXd;

/// Dimension mismatch, non-finite input, or an otherwise malformed argument.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the domain where an operation is defined (e.g. log of 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An oracle produced a non-finite value or subgradient.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

inline void require_dimension(Eigen::Index got, Eigen::Index expected,
                              const char* what) {
  if (got != expected) {
    throw ArgumentError(std::string(what) + ": dimension " +
                        std::to_string(got) + " does not match " +
                        std::to_string(expected));
  }
}

}  // namespace admd
