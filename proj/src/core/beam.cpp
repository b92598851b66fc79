#include "nslit/beam.hpp"

#include <cmath>
#include <string>

#include "nslit/types.hpp"

namespace nslit {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string("beam: ") + name + " must be positive and finite");
  }
}

}  // namespace

BeamParams::BeamParams(double mass, double energy, double amplitude, double hbar, double k)
    : mass_(mass),
      energy_(energy),
      amplitude_(amplitude),
      hbar_(hbar),
      k_(k),
      wavelength_(2.0 * kPi / k) {}

BeamParams BeamParams::from_energy(double mass, double energy, double amplitude, double hbar) {
  require_positive(mass, "mass");
  require_positive(energy, "energy");
  require_positive(amplitude, "amplitude");
  require_positive(hbar, "hbar");
  return BeamParams(mass, energy, amplitude, hbar, std::sqrt(2.0 * mass * energy) / hbar);
}

BeamParams BeamParams::from_wavelength(double mass, double wavelength, double amplitude,
                                       double hbar) {
  require_positive(wavelength, "wavelength");
  return from_energy(mass, energy_from_wavelength(mass, wavelength, hbar), amplitude, hbar);
}

BeamParams BeamParams::with_amplitude(double amplitude) const {
  require_positive(amplitude, "amplitude");
  BeamParams out = *this;
  out.amplitude_ = amplitude;
  return out;
}

double wavenumber(const BeamParams& beam) { return beam.wavenumber(); }

double energy_from_wavelength(double mass, double wavelength, double hbar) {
  require_positive(mass, "mass");
  require_positive(wavelength, "wavelength");
  require_positive(hbar, "hbar");
  const double p = hbar * 2.0 * kPi / wavelength;
  return p * p / (2.0 * mass);
}

}  // namespace nslit
