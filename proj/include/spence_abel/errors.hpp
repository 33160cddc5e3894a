#pragma once

#include <stdexcept>
#include <string>

namespace spence_abel {

/// Two or more points of a configuration coincide (chordal distance below
/// kDistinctnessTolerance).
class DegenerateConfiguration : public std::invalid_argument {
 public:
  explicit DegenerateConfiguration(const std::string& what)
      : std::invalid_argument(what) {}
};

/// An argument lies outside the open domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A right-hand side fails the admissibility checks (6-term equation or
/// reflection relation) on the validation grid.
class InvalidRhs : public std::invalid_argument {
 public:
  explicit InvalidRhs(const std::string& what) : std::invalid_argument(what) {}
};

/// Caller-supplied data is inconsistent with the requested experiment.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what)
      : std::invalid_argument(what) {}
};

/// Adaptive quadrature exhausted its subdivision budget. Carries the best
/// available estimate and its error estimate.
class ToleranceNotMet : public std::runtime_error {
 public:
  ToleranceNotMet(const std::string& what, double best_real, double best_imag,
                  double error_estimate)
      : std::runtime_error(what),
        best_real_(best_real),
        best_imag_(best_imag),
        error_estimate_(error_estimate) {}

  double best_real() const { return best_real_; }
  double best_imag() const { return best_imag_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double best_real_;
  double best_imag_;
  double error_estimate_;
};

}  // namespace spence_abel
