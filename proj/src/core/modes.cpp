#include "nslit/modes.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace nslit {

double fourier_coefficient(ModeIndex mode, const BeamParams& beam) {
  return 16.0 * beam.amplitude() /
         (double(mode.width_number()) * double(mode.length_number()) * kPi * kPi);
}

Complex kz_from_radicand(double radicand) {
  if (radicand >= 0.0) return {std::sqrt(radicand), 0.0};
  return {0.0, std::sqrt(-radicand)};
}

Complex longitudinal_wavenumber(ModeIndex mode, double width, const SlitGeometry& geometry,
                                const BeamParams& beam) {
  const bool known = width == geometry.a1() || (geometry.a2() && width == *geometry.a2());
  if (!known) throw DomainError("longitudinal_wavenumber: width is not a slit width of the geometry");
  const double k = beam.wavenumber();
  const double kx = mode.length_number() * kPi / geometry.b();
  const double ky = mode.width_number() * kPi / width;
  return kz_from_radicand(k * k - kx * kx - ky * ky);
}

Complex in_slit_wavefunction(double x, double y, double z, Slit slit,
                             const SlitGeometry& geometry, const BeamParams& beam,
                             const Truncation& truncation) {
  truncation.validate();
  const double width = geometry.width(slit);
  const double offset = geometry.offset(slit);
  const double b = geometry.b();
  const double local_y = y - offset;
  if (!(x >= 0.0 && x <= b) || !(local_y >= 0.0 && local_y <= width) ||
      !(z >= 0.0 && z <= geometry.c())) {
    throw DomainError("in_slit_wavefunction: point lies outside the selected slit");
  }
  // Hard walls.
  if (x == 0.0 || x == b || local_y == 0.0 || local_y == width) return {0.0, 0.0};

  const int m_count = truncation.m_max + 1;
  const int n_count = truncation.n_max + 1;
  const Eigen::ArrayXd odd_m = 2.0 * Eigen::ArrayXd::LinSpaced(m_count, 0.0, m_count - 1.0) + 1.0;
  const Eigen::ArrayXd odd_n = 2.0 * Eigen::ArrayXd::LinSpaced(n_count, 0.0, n_count - 1.0) + 1.0;
  const Eigen::ArrayXd across = (odd_m * (kPi * local_y / width)).sin() / odd_m;
  const Eigen::ArrayXd along = (odd_n * (kPi * x / b)).sin() / odd_n;

  const double k = beam.wavenumber();
  const double scale = 16.0 * beam.amplitude() / (kPi * kPi);
  Complex sum{0.0, 0.0};
  for (int m = 0; m < m_count; ++m) {
    const double ky = odd_m(m) * kPi / width;
    Complex row{0.0, 0.0};
    for (int n = 0; n < n_count; ++n) {
      const double kx = odd_n(n) * kPi / b;
      const Complex kz = kz_from_radicand(k * k - kx * kx - ky * ky);
      row += along(n) * std::exp(Complex{0.0, 1.0} * kz * z);
    }
    sum += across(m) * row;
  }
  return scale * sum;
}

}  // namespace nslit
