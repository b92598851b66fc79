#include <cmath>
#include <vector>

#include "nslit/diffraction.hpp"
#include "nslit/modes.hpp"
#include "nslit/parallel.hpp"
#include "nslit/slit_integral.hpp"

namespace nslit {

namespace {

constexpr Complex kI{0.0, 1.0};

struct SlitPair {
  Complex first;
  Complex second;
};

void require_double(const SlitGeometry& geometry) {
  if (!geometry.is_double()) throw DomainError("a double-slit geometry is required");
}

// Evaluates both slit amplitudes at every grid point; the cross terms of all
// two-slit intensities are built from these without revisiting the modes.
std::vector<SlitPair> pair_amplitudes(const Eigen::ArrayXd& s, const SlitGeometry& geometry,
                                      const BeamParams& beam, const DetectorScan& scan,
                                      const Truncation& truncation, unsigned threads) {
  require_double(geometry);
  const SlitPropagator first(Slit::first, geometry, beam, scan, truncation);
  const SlitPropagator second(Slit::second, geometry, beam, scan, truncation);
  std::vector<SlitPair> out(static_cast<std::size_t>(s.size()));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    const double si = s(static_cast<Eigen::Index>(i));
    out[i] = {first.amplitude(si), second.amplitude(si)};
  });
  return out;
}

double interference(const SlitPair& psi, const CoherenceParams& coherence, double damping) {
  const double c1 = coherence.c1();
  const double c2 = coherence.c2();
  const double value = c1 * c1 * std::norm(psi.first) + c2 * c2 * std::norm(psi.second) +
                       2.0 * c1 * c2 * damping * (std::conj(psi.first) * psi.second).real();
  return std::max(0.0, value);
}

}  // namespace

SlitPropagator::SlitPropagator(Slit slit, const SlitGeometry& geometry, const BeamParams& beam,
                               const DetectorScan& scan, const Truncation& truncation)
    : slit_(slit),
      width_(geometry.width(slit)),
      offset_(geometry.offset(slit)),
      k_(beam.wavenumber()),
      l_(scan.l()) {
  truncation.validate();
  const double cos_alpha = std::cos(scan.alpha());
  cos2_alpha_ = cos_alpha * cos_alpha;

  const int m_count = truncation.m_max + 1;
  const int n_count = truncation.n_max + 1;
  const double b = geometry.b();
  const double c = geometry.c();
  const double qx = k_ * std::sin(scan.alpha());

  Eigen::ArrayXcd along(n_count);
  for (int n = 0; n < n_count; ++n) along(n) = slit_integral(2 * n + 1, qx, b);

  axial_.resize(m_count);
  weight_.resize(m_count);
  for (int m = 0; m < m_count; ++m) {
    Complex p{0.0, 0.0};
    Complex q{0.0, 0.0};
    for (int n = 0; n < n_count; ++n) {
      const ModeIndex mode{static_cast<unsigned>(m), static_cast<unsigned>(n)};
      const Complex kz = longitudinal_wavenumber(mode, width_, geometry, beam);
      const Complex term = fourier_coefficient(mode, beam) * std::exp(kI * kz * c) * along(n);
      p += term * kz;
      q += term;
    }
    axial_(m) = p;
    weight_(m) = q;
  }
}

Complex SlitPropagator::amplitude(double s) const {
  const double r = std::hypot(l_, s);
  const double sin_beta = s / r;
  const double radicand = cos2_alpha_ - sin_beta * sin_beta;
  if (radicand < 0.0) throw DomainError("slit_amplitude: cos^2(alpha) < (s/R)^2");
  const double q = k_ * sin_beta;
  const Complex obliquity = Complex{-1.0 / r, k_} * std::sqrt(radicand);

  Complex sum{0.0, 0.0};
  for (Eigen::Index m = 0; m < axial_.size(); ++m) {
    const Complex across = slit_integral(2 * static_cast<int>(m) + 1, q, width_);
    sum += across * (kI * axial_(m) + obliquity * weight_(m));
  }
  if (slit_ == Slit::second) sum *= std::exp(Complex{0.0, -q * offset_});
  return -std::exp(Complex{0.0, k_ * r}) / (4.0 * kPi * r) * sum;
}

Complex slit_amplitude(Slit slit, double s, const SlitGeometry& geometry, const BeamParams& beam,
                       const DetectorScan& scan, const Truncation& truncation) {
  return SlitPropagator(slit, geometry, beam, scan, truncation).amplitude(s);
}

Complex coherent_amplitude(double s, const SlitGeometry& geometry, const BeamParams& beam,
                           const DetectorScan& scan, const CoherenceParams& coherence,
                           const Truncation& truncation) {
  require_double(geometry);
  return coherence.c1() * slit_amplitude(Slit::first, s, geometry, beam, scan, truncation) +
         coherence.c2() * slit_amplitude(Slit::second, s, geometry, beam, scan, truncation);
}

IntensityProfile intensity_single(const DetectorScan& scan, const SlitGeometry& geometry,
                                  const BeamParams& beam, const Truncation& truncation,
                                  unsigned threads) {
  const Eigen::ArrayXd s = scan.grid();
  const SlitPropagator first(Slit::first, geometry, beam, scan, truncation);
  Eigen::ArrayXd intensity(s.size());
  parallel_for(static_cast<std::size_t>(s.size()), threads, [&](std::size_t i) {
    const auto j = static_cast<Eigen::Index>(i);
    intensity(j) = std::norm(first.amplitude(s(j)));
  });
  return IntensityProfile(s, std::move(intensity),
                          ProfileMeta{ProfileKind::single, geometry, beam, scan, std::nullopt,
                                      truncation});
}

IntensityProfile intensity_coherent(const DetectorScan& scan, const SlitGeometry& geometry,
                                    const BeamParams& beam, const CoherenceParams& coherence,
                                    const Truncation& truncation, unsigned threads) {
  const Eigen::ArrayXd s = scan.grid();
  const auto psi = pair_amplitudes(s, geometry, beam, scan, truncation, threads);
  Eigen::ArrayXd intensity(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    intensity(i) = interference(psi[static_cast<std::size_t>(i)], coherence, 1.0);
  }
  return IntensityProfile(s, std::move(intensity),
                          ProfileMeta{ProfileKind::coherent, geometry, beam, scan, coherence,
                                      truncation});
}

IntensityProfile intensity_decoherent(const DetectorScan& scan, const SlitGeometry& geometry,
                                      const BeamParams& beam, const CoherenceParams& coherence,
                                      const Truncation& truncation, unsigned threads) {
  const Eigen::ArrayXd s = scan.grid();
  const auto psi = pair_amplitudes(s, geometry, beam, scan, truncation, threads);
  const double alpha = coherence.alpha_overlap();
  const double gain = 1.0 + alpha * alpha;
  Eigen::ArrayXd intensity(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    intensity(i) =
        gain * interference(psi[static_cast<std::size_t>(i)], coherence, coherence.lambda_t());
  }
  return IntensityProfile(s, std::move(intensity),
                          ProfileMeta{ProfileKind::decoherent, geometry, beam, scan, coherence,
                                      truncation});
}

TwoSlitComponents two_slit_components(const DetectorScan& scan, const SlitGeometry& geometry,
                                      const BeamParams& beam, const CoherenceParams& coherence,
                                      const Truncation& truncation, unsigned threads) {
  TwoSlitComponents out{scan.grid(), {}, {}};
  const auto psi = pair_amplitudes(out.s, geometry, beam, scan, truncation, threads);
  out.direct.resize(out.s.size());
  out.cross.resize(out.s.size());
  const double c1 = coherence.c1();
  const double c2 = coherence.c2();
  for (Eigen::Index i = 0; i < out.s.size(); ++i) {
    const auto& p = psi[static_cast<std::size_t>(i)];
    out.direct(i) = c1 * c1 * std::norm(p.first) + c2 * c2 * std::norm(p.second);
    out.cross(i) = 2.0 * c1 * c2 * (std::conj(p.first) * p.second).real();
  }
  return out;
}

IntensityProfile compute_profile(ProfileKind kind, const DetectorScan& scan,
                                 const SlitGeometry& geometry, const BeamParams& beam,
                                 const std::optional<CoherenceParams>& coherence,
                                 const Truncation& truncation, unsigned threads) {
  if (kind == ProfileKind::single) {
    return intensity_single(scan, geometry, beam, truncation, threads);
  }
  if (!coherence) throw DomainError("two-slit profiles need superposition coefficients");
  if (kind == ProfileKind::coherent) {
    return intensity_coherent(scan, geometry, beam, *coherence, truncation, threads);
  }
  return intensity_decoherent(scan, geometry, beam, *coherence, truncation, threads);
}

}  // namespace nslit
