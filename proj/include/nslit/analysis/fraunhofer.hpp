#pragma once

namespace nslit::analysis {

/// Largest Fresnel number a^2 / (lambda l) accepted by the classical
/// far-field formulas below.
inline constexpr double kMaxFresnelNumber = 1.0;

/// Classical single-slit pattern sinc^2(pi a sin(beta) / lambda), normalised
/// to 1 at s = 0, with sin(beta) = s / sqrt(l^2 + s^2).
/// Throws DomainError when a^2 / (lambda l) exceeds kMaxFresnelNumber.
double fraunhofer_single(double s, double a, double wavelength, double l);

/// Classical pattern of two slits of widths a1, a2 whose centres are D apart,
/// normalised to 1 at s = 0. The far-field check uses the wider slit.
double fraunhofer_double(double s, double a1, double a2, double centre_distance,
                         double wavelength, double l);

/// Screen position of the j-th zero of the single-slit pattern,
/// l tan(asin(j lambda / a)).
double fraunhofer_single_zero(int j, double a, double wavelength, double l);

/// Fringe period lambda l / D of the small-angle two-slit pattern.
double fraunhofer_fringe_period(double centre_distance, double wavelength, double l);

}  // namespace nslit::analysis
