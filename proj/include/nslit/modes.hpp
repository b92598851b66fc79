#pragma once

#include "nslit/beam.hpp"
#include "nslit/geometry.hpp"
#include "nslit/types.hpp"

namespace nslit {

/// Fourier coefficient of the constant incident amplitude A on the hard-wall
/// slit basis: 16 A / ((2m+1)(2n+1) pi^2). Even physical indices vanish and
/// are not representable by ModeIndex.
double fourier_coefficient(ModeIndex mode, const BeamParams& beam);

/// Square root of a longitudinal radicand k^2 - kx^2 - ky^2. Negative
/// radicands map to the branch with positive imaginary part, so that
/// exp(i kz z) decays along +z.
Complex kz_from_radicand(double radicand);

/// Longitudinal wavenumber of `mode` in a slit of the given width (a1 or a2
/// of `geometry`).
Complex longitudinal_wavenumber(ModeIndex mode, double width, const SlitGeometry& geometry,
                                const BeamParams& beam);

/// Stationary wavefunction inside the selected slit at (x, y, z), summed over
/// the truncated mode series. The time factor exp(-i E t / hbar) is omitted.
/// y is the global coordinate (slit 2 starts at a1 + d).
Complex in_slit_wavefunction(double x, double y, double z, Slit slit,
                             const SlitGeometry& geometry, const BeamParams& beam,
                             const Truncation& truncation);

}  // namespace nslit
