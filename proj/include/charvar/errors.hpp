#pragma once

#include <stdexcept>
#include <string>

namespace charvar {

// Malformed arguments: genus out of range, index out of range, bad branch points.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Floating-point trouble: singular matrices, failed refinement, ambiguous ranks.
class NumericFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceFailure : public NumericFault {
 public:
  ConvergenceFailure(const std::string& what, double residual, int iterations)
      : NumericFault(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

// A singular value fell inside the indeterminate band around the rank cutoff.
class RankAmbiguous : public NumericFault {
 public:
  RankAmbiguous(const std::string& what, double singular_value)
      : NumericFault(what), singular_value_(singular_value) {}
  double singular_value() const { return singular_value_; }

 private:
  double singular_value_;
};

class NotACocycle : public InvalidInput {
 public:
  NotACocycle(const std::string& what, double residual)
      : InvalidInput(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace charvar
