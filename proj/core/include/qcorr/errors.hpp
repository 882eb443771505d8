#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input matrix is not Hermitian within tolerance.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Matrix has an eigenvalue below the PSD clamp threshold.
class NotPsdError : public Error {
 public:
  NotPsdError(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// A density matrix violates one of the X-state invariants. `invariant()`
/// names the violated condition ("trace", "positivity14", ...).
class InvalidStateError : public Error {
 public:
  InvalidStateError(const std::string& invariant, const std::string& detail)
      : Error("invalid state (" + invariant + "): " + detail), invariant_(invariant) {}
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// A Fano-Bloch tensor has entries outside the X pattern.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of refinement budget.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double best_estimate, double error_estimate)
      : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// ODE state became non-finite.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double last_valid_time)
      : Error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const noexcept { return last_valid_time_; }

 private:
  double last_valid_time_;
};

/// A closed-form model produced an unphysical state.
class ModelInconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcorr
