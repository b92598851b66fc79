#pragma once

#include <functional>

#include "nslit/types.hpp"

namespace nslit::analysis {

struct QuadratureOptions {
  /// Panel doubling stops once two successive estimates differ by at most
  /// tolerance * |integral| plus a rounding allowance of 64 eps * \int |f|.
  double tolerance = 1e-13;
  /// Maximum number of doublings (starting from 2 panels).
  unsigned max_depth = 14;
};

/// Composite 20-point Gauss-Legendre integration of a complex integrand
/// over [a, b], doubling the number of equal panels until converged. Throws
/// ComputationError("quadrature") when max_depth doublings do not suffice.
Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                  const QuadratureOptions& options = {});

/// \int_0^w exp(-i q y) sin(N pi y / w) dy by numerical quadrature, evaluated
/// in long double.
Complex quadrature_slit_integral(int mode_number, double q, double width,
                                 const QuadratureOptions& options = {});

/// \int_{o}^{o+w} exp(-i q y) sin(N pi (y - o) / w) dy by numerical quadrature,
/// integrating the translated slit directly.
Complex quadrature_shifted_slit_integral(int mode_number, double q, double width, double offset,
                                         const QuadratureOptions& options = {});

}  // namespace nslit::analysis
