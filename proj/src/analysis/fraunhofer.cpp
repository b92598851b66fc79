#include "nslit/analysis/fraunhofer.hpp"

#include <algorithm>
#include <cmath>

#include "nslit/types.hpp"

namespace nslit::analysis {

namespace {

void require_far_field(double a, double wavelength, double l) {
  if (!(a > 0.0) || !(wavelength > 0.0) || !(l > 0.0)) {
    throw DomainError("fraunhofer: a, wavelength and l must be positive");
  }
  if (a * a / (wavelength * l) > kMaxFresnelNumber) {
    throw DomainError("fraunhofer: screen is not in the far field (a^2 / (lambda l) > 1)");
  }
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

double sin_beta(double s, double l) { return s / std::hypot(l, s); }

}  // namespace

double fraunhofer_single(double s, double a, double wavelength, double l) {
  require_far_field(a, wavelength, l);
  const double x = kPi * a * sin_beta(s, l) / wavelength;
  const double v = sinc(x);
  return v * v;
}

double fraunhofer_double(double s, double a1, double a2, double centre_distance,
                         double wavelength, double l) {
  require_far_field(std::max(a1, a2), wavelength, l);
  if (!(centre_distance > 0.0)) throw DomainError("fraunhofer: centre distance must be positive");
  const double u = kPi * sin_beta(s, l) / wavelength;
  const double e1 = a1 * sinc(u * a1);
  const double e2 = a2 * sinc(u * a2);
  const double norm = (a1 + a2) * (a1 + a2);
  return (e1 * e1 + e2 * e2 + 2.0 * e1 * e2 * std::cos(2.0 * u * centre_distance)) / norm;
}

double fraunhofer_single_zero(int j, double a, double wavelength, double l) {
  require_far_field(a, wavelength, l);
  const double sb = j * wavelength / a;
  if (std::abs(sb) >= 1.0) throw DomainError("fraunhofer: zero order beyond 90 degrees");
  return l * sb / std::sqrt(1.0 - sb * sb);
}

double fraunhofer_fringe_period(double centre_distance, double wavelength, double l) {
  if (!(centre_distance > 0.0) || !(wavelength > 0.0) || !(l > 0.0)) {
    throw DomainError("fraunhofer: arguments must be positive");
  }
  return wavelength * l / centre_distance;
}

}  // namespace nslit::analysis
