#pragma once

#include <stdexcept>
#include <string>

namespace clab {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameter validation
class InvalidExponentsError : public Error { using Error::Error; };
class InvalidDimensionError : public Error { using Error::Error; };
class InvalidRadiusError : public Error { using Error::Error; };
class DimensionTooLowError : public Error { using Error::Error; };

// Grid and linear algebra
class GridTooCoarseError : public Error { using Error::Error; };
class LengthMismatchError : public Error { using Error::Error; };
class SingularSystemError : public Error { using Error::Error; };

// Fiber / variational solvers
class DegenerateFieldError : public Error { using Error::Error; };
class InfeasibleError : public Error { using Error::Error; };
class NotConvergedError : public Error { using Error::Error; };

// Classification and constructions
class NotASolutionError : public Error { using Error::Error; };
class NotCompactonError : public Error { using Error::Error; };
class HypothesesUnmetError : public Error { using Error::Error; };
class NoSignChangeError : public Error { using Error::Error; };

/// Thrown when a sub/super-solution sweep produces an iterate that rises
/// above its predecessor by more than the allowed slack.  Carries the
/// iteration index and the worst pointwise violation for diagnostics.
class MonotonicityLostError : public Error {
 public:
  MonotonicityLostError(const std::string& msg, long iteration, double violation)
      : Error(msg), iteration_(iteration), violation_(violation) {}
  long iteration() const noexcept { return iteration_; }
  double violation() const noexcept { return violation_; }

 private:
  long iteration_;
  double violation_;
};

// Command line / configuration
class UsageError : public Error { using Error::Error; };

}  // namespace clab
