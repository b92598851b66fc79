#pragma once

#include "nslit/types.hpp"

namespace nslit {

/// Half-width of the band |q| in [mu (1 - eps), mu (1 + eps)] around the
/// removable poles q = +-mu where slit_integral switches to a Taylor expansion.
inline constexpr double kSlitIntegralGuardBand = 1e-6;

/// Closed form of
///
///     I(q) = \int_0^w exp(-i q y) sin(mu y) dy,   mu = N pi / w,
///
/// which equals mu (1 - (-1)^N exp(-i q w)) / (mu^2 - q^2).
///
/// Writing q = sigma mu + delta with sigma = sign(q), the numerator becomes
/// 1 - exp(-i delta w) exactly and the denominator -sigma delta (2 mu + sigma delta),
/// so neither factor suffers cancellation near the poles. Inside the guard
/// band the ratio is replaced by its second-order expansion in delta w; at
/// q = +-mu the result is -+ i w / 2.
///
/// `mode_number` is N >= 1 (odd for the slit basis), `width` > 0.
Complex slit_integral(int mode_number, double q, double width);

}  // namespace nslit
