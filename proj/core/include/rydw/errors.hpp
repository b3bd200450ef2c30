#pragma once

#include <stdexcept>
#include <string>

namespace rydw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A parameter value outside the model's domain (negative lattice period, N < 2, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// |zeta| == 1 or a displacement-dependent bracket hits the dressing resonance.
class SingularParameterError : public Error {
public:
  using Error::Error;
};

/// A sweet-spot-only quantity was requested away from the sweet spot.
class SweetSpotRequiredError : public Error {
public:
  using Error::Error;
};

/// Quasimomentum not of the form 2*pi*j/N.
class InvalidMomentumError : public Error {
public:
  using Error::Error;
};

/// Requested Hilbert space exceeds the configured maximum dimension.
class CapacityError : public Error {
public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
public:
  using Error::Error;
};

/// Eigensolver gave up; the message carries best-so-far diagnostics.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double best_value, double best_residual, int iterations)
      : Error(what), best_value_(best_value), best_residual_(best_residual),
        iterations_(iterations) {}

  double best_value() const noexcept { return best_value_; }
  double best_residual() const noexcept { return best_residual_; }
  int iterations() const noexcept { return iterations_; }

private:
  double best_value_;
  double best_residual_;
  int iterations_;
};

/// Time propagation lost unitarity beyond the configured bound.
class StepSizeError : public Error {
public:
  using Error::Error;
};

}  // namespace rydw
