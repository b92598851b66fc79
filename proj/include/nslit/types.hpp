#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace nslit {

/// Wavefunction value in units of the incident plane-wave amplitude.
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Thrown when an argument violates a type or operation precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not produce a result. `code()` is a short
/// machine-readable tag ("no_fringe", "quadrature", "empty_overlap", ...).
class ComputationError : public std::runtime_error {
 public:
  ComputationError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class NoFringeError : public ComputationError {
 public:
  explicit NoFringeError(const std::string& what) : ComputationError("no_fringe", what) {}
};

}  // namespace nslit
