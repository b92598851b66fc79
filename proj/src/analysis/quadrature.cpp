#include "nslit/analysis/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>

namespace nslit::analysis {

namespace {

template <typename Real>
struct PanelSum {
  std::complex<Real> value;
  Real l1;
};

template <typename Real, typename F>
PanelSum<Real> composite(const F& f, Real a, Real b, std::size_t panels) {
  using Gauss = boost::math::quadrature::gauss<Real, 20>;
  PanelSum<Real> sum{{0, 0}, 0};
  const Real h = (b - a) / static_cast<Real>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const Real lo = a + h * static_cast<Real>(p);
    const Real hi = p + 1 == panels ? b : lo + h;
    sum.value += Gauss::integrate(f, lo, hi);
    sum.l1 += Gauss::integrate([&](Real y) { return std::abs(f(y)); }, lo, hi);
  }
  return sum;
}

// Doubles the panel count until two estimates differ by at most
// tolerance * |I| plus a rounding floor proportional to \int |f|.
template <typename Real, typename F>
std::complex<Real> integrate_panels(const F& f, Real a, Real b, const QuadratureOptions& options) {
  const Real floor = 64 * std::numeric_limits<Real>::epsilon();
  std::size_t panels = 2;
  PanelSum<Real> previous = composite(f, a, b, panels);
  Real change = std::numeric_limits<Real>::infinity();
  for (unsigned level = 0; level < options.max_depth; ++level) {
    panels *= 2;
    const PanelSum<Real> current = composite(f, a, b, panels);
    if (!std::isfinite(current.value.real()) || !std::isfinite(current.value.imag())) break;
    change = std::abs(current.value - previous.value);
    if (change <= Real(options.tolerance) * std::abs(current.value) + floor * current.l1) {
      return current.value;
    }
    previous = current;
  }
  char message[96];
  std::snprintf(message, sizeof message,
                "quadrature did not converge (last change %.3g, %zu panels)", double(change),
                panels);
  throw ComputationError("quadrature", message);
}

}  // namespace

Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                  const QuadratureOptions& options) {
  if (!(b > a)) throw DomainError("integrate: require a < b");
  return integrate_panels<double>(f, a, b, options);
}

Complex quadrature_slit_integral(int mode_number, double q, double width,
                                 const QuadratureOptions& options) {
  return quadrature_shifted_slit_integral(mode_number, q, width, 0.0, options);
}

Complex quadrature_shifted_slit_integral(int mode_number, double q, double width, double offset,
                                         const QuadratureOptions& options) {
  if (mode_number < 1) throw DomainError("quadrature_slit_integral: mode number must be >= 1");
  if (!(width > 0.0)) throw DomainError("quadrature_slit_integral: width must be positive");
  // The integral can be orders of magnitude below \int |f| (the closed-form
  // numerator nearly cancels), so the integrand and the rule run in extended
  // precision.
  using Real = long double;
  const Real mu = mode_number * 3.141592653589793238462643383279502884L / width;
  const Real ql = q;
  const Real o = offset;
  const auto integrand = [=](Real y) {
    const Real wave = std::sin(mu * (y - o));
    return std::complex<Real>(std::cos(ql * y) * wave, -std::sin(ql * y) * wave);
  };
  const auto value = integrate_panels<Real>(integrand, o, o + Real(width), options);
  return {static_cast<double>(value.real()), static_cast<double>(value.imag())};
}

}  // namespace nslit::analysis
