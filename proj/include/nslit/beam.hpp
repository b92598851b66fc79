#pragma once

namespace nslit {

/// Reduced Planck constant used by default [J s]. Three significant figures,
/// so that the reference neutron parameters reproduce their quoted wavelength.
inline constexpr double kDefaultHbar = 1.055e-34;

/// Incident particle beam: mass, kinetic energy and plane-wave amplitude.
///
/// Immutable once built. The wavenumber k = sqrt(2 M E) / hbar and the de
/// Broglie wavelength 2 pi / k are derived at construction, whichever of
/// energy or wavelength was supplied.
class BeamParams {
 public:
  static BeamParams from_energy(double mass, double energy, double amplitude = 1.0,
                                double hbar = kDefaultHbar);
  static BeamParams from_wavelength(double mass, double wavelength, double amplitude = 1.0,
                                    double hbar = kDefaultHbar);

  double mass() const noexcept { return mass_; }
  double energy() const noexcept { return energy_; }
  double amplitude() const noexcept { return amplitude_; }
  double hbar() const noexcept { return hbar_; }
  double wavenumber() const noexcept { return k_; }
  double wavelength() const noexcept { return wavelength_; }

  BeamParams with_amplitude(double amplitude) const;

 private:
  BeamParams(double mass, double energy, double amplitude, double hbar, double k);

  double mass_;
  double energy_;
  double amplitude_;
  double hbar_;
  double k_;
  double wavelength_;
};

/// sqrt(2 M E) / hbar [1/m].
double wavenumber(const BeamParams& beam);

/// Kinetic energy of a particle of the given mass with de Broglie wavelength
/// `wavelength`: (hbar 2 pi / wavelength)^2 / (2 M).
double energy_from_wavelength(double mass, double wavelength, double hbar = kDefaultHbar);

}  // namespace nslit
