#include "nslit/slit_integral.hpp"

#include <cmath>

namespace nslit {

Complex slit_integral(int mode_number, double q, double width) {
  if (mode_number < 1) throw DomainError("slit_integral: mode number must be >= 1");
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw DomainError("slit_integral: width must be positive");
  }
  if (!std::isfinite(q)) throw DomainError("slit_integral: q must be finite");

  const double mu = mode_number * kPi / width;
  const double sigma = std::signbit(q) ? -1.0 : 1.0;
  const double delta = q - sigma * mu;
  const double theta = delta * width;
  const double tail = 2.0 * mu + sigma * delta;

  if (std::abs(delta) <= kSlitIntegralGuardBand * mu) {
    // (1 - exp(-i theta)) / (i theta) = 1 - i theta / 2 - theta^2 / 6 + O(theta^3)
    const Complex g{1.0 - theta * theta / 6.0, -0.5 * theta};
    return Complex{0.0, -sigma * mu * width} * g / tail;
  }

  const double half = std::sin(0.5 * theta);
  const Complex numerator{2.0 * half * half, std::sin(theta)};
  return mu * numerator / (-sigma * delta * tail);
}

}  // namespace nslit
