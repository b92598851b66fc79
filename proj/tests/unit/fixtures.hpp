#pragma once

#include <cmath>
#include <complex>

#include "nslit/beam.hpp"
#include "nslit/diffraction.hpp"
#include "nslit/geometry.hpp"

namespace fixtures {

// Reference neutron beam: M = 1.67e-27 kg, E = 3.3e-23 J.
inline nslit::BeamParams neutron(double amplitude = 1.0) {
  return nslit::BeamParams::from_energy(1.67e-27, 3.3e-23, amplitude);
}

inline nslit::SlitGeometry reference_double() {
  return nslit::SlitGeometry::dual(21.9e-6, 22.5e-6, 100e-6, 3.0e-5);
}

inline nslit::DetectorScan reference_scan(int samples = 801) {
  return nslit::DetectorScan(5.0, 0.0, -500e-6, 500e-6, samples);
}

inline double rel(std::complex<double> a, std::complex<double> b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace fixtures
