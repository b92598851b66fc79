#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "nslit/analysis/quadrature.hpp"

using namespace nslit;
using fixtures::rel;

namespace {

const Truncation kSmall{4, 2, 0.01};
const Truncation kReference{600, 10, 0.01};

// Mode-by-mode far-field sum with every aperture integral done by quadrature
// over the actual slit position.
Complex brute_force_amplitude(Slit slit, double s, const SlitGeometry& g, const BeamParams& beam,
                              double l, double alpha, int m_count, int n_count) {
  const double k = beam.wavenumber();
  const double a = g.width(slit);
  const double lo = slit == Slit::first ? 0.0 : g.a1() + *g.d();
  const double r = std::sqrt(l * l + s * s);
  const double q = k * s / r;
  const double qx = k * std::sin(alpha);
  const Complex i{0.0, 1.0};
  const Complex g_factor =
      (i * k - 1.0 / r) * std::sqrt(std::cos(alpha) * std::cos(alpha) - (s / r) * (s / r));
  Complex sum{0.0, 0.0};
  for (int m = 0; m < m_count; ++m) {
    const int mm = 2 * m + 1;
    const Complex y_int = analysis::quadrature_shifted_slit_integral(mm, q, a, lo);
    for (int n = 0; n < n_count; ++n) {
      const int nn = 2 * n + 1;
      const Complex x_int = analysis::quadrature_slit_integral(nn, qx, g.b());
      const double d = 16.0 * beam.amplitude() / (mm * nn * kPi * kPi);
      const Complex kz = std::sqrt(Complex{k * k - std::pow(nn * kPi / g.b(), 2) -
                                               std::pow(mm * kPi / a, 2),
                                           0.0});
      sum += d * std::exp(i * kz * g.c()) * x_int * y_int * (i * kz + g_factor);
    }
  }
  return -std::exp(i * k * r) / (4.0 * kPi * r) * sum;
}

}  // namespace

TEST_CASE("far-field amplitude matches the brute-force mode sum") {
  const auto beam = fixtures::neutron(6.8e-2);
  const auto g = fixtures::reference_double();
  for (double alpha : {0.0, 2e-6}) {
    const DetectorScan scan(5.0, alpha, -400e-6, 400e-6, 9);
    for (double s : {-400e-6, -123e-6, 0.0, 37e-6, 250e-6}) {
      for (Slit slit : {Slit::first, Slit::second}) {
        const Complex lib = slit_amplitude(slit, s, g, beam, scan, kSmall);
        const Complex ref = brute_force_amplitude(slit, s, g, beam, 5.0, alpha, 5, 3);
        CHECK_MESSAGE(rel(lib, ref) < 1e-10, "s=" << s << " slit=" << int(slit));
      }
    }
  }
}

TEST_CASE("equal widths: slit 2 is slit 1 times a pure phase") {
  const auto beam = fixtures::neutron(6.8e-2);
  const auto g = SlitGeometry::dual(22e-6, 22e-6, 100e-6, 3e-5);
  const auto scan = fixtures::reference_scan(41);
  const SlitPropagator first(Slit::first, g, beam, scan, kReference);
  const SlitPropagator second(Slit::second, g, beam, scan, kReference);
  const Eigen::ArrayXd s = scan.grid();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double q = beam.wavenumber() * s(i) / std::hypot(5.0, s(i));
    const Complex p1 = first.amplitude(s(i));
    const Complex p2 = second.amplitude(s(i));
    CHECK(rel(std::abs(p2), std::abs(p1)) < 1e-10);
    CHECK(rel(p2, p1 * std::exp(Complex{0.0, -q * 122e-6})) < 1e-10);
  }
}

TEST_CASE("coherence parameters") {
  const CoherenceParams c(0.397, 0.918);
  CHECK(0.397 * 0.397 + 0.918 * 0.918 == doctest::Approx(1.000333).epsilon(1e-9));
  CHECK(c.c1() * c.c1() + c.c2() * c.c2() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.c2() / c.c1() == doctest::Approx(0.918 / 0.397).epsilon(1e-15));
  CHECK(c.lambda_t() == 1.0);
  CHECK(c.alpha_overlap() == doctest::Approx(1.0));

  const CoherenceParams partial(0.397, 0.918, 0.59);
  const double alpha = partial.alpha_overlap();
  CHECK(alpha == doctest::Approx(0.59 / (1.0 + std::sqrt(1.0 - 0.59 * 0.59))).epsilon(1e-15));
  CHECK(2.0 * alpha / (1.0 + alpha * alpha) == doctest::Approx(0.59).epsilon(1e-14));
  CHECK(coherence_from_alpha_overlap(alpha) == doctest::Approx(0.59).epsilon(1e-14));
  CHECK(alpha_overlap_from_coherence(0.0) == 0.0);

  CHECK_THROWS_AS(CoherenceParams(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(CoherenceParams(-0.1, 1.0), DomainError);
  CHECK_THROWS_AS(CoherenceParams(0.4, 0.9, 1.5), DomainError);
  CHECK_THROWS_AS(CoherenceParams(0.4, 0.9, -0.1), DomainError);
}

TEST_CASE("profile kind names round-trip") {
  for (auto kind : {ProfileKind::single, ProfileKind::coherent, ProfileKind::decoherent}) {
    CHECK(profile_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_FALSE(profile_kind_from_string("triple").has_value());
}

TEST_CASE("detector scan grid and validation") {
  const auto scan = fixtures::reference_scan();
  const Eigen::ArrayXd s = scan.grid();
  REQUIRE(s.size() == 801);
  CHECK(s(0) == -500e-6);
  CHECK(s(800) == 500e-6);
  CHECK(s(400) == 0.0);
  for (Eigen::Index i = 0; i < s.size(); ++i) CHECK(s(i) == -s(s.size() - 1 - i));

  const auto point = DetectorScan::point(5.0, 0.0, 1e-4);
  CHECK(point.grid().size() == 1);
  CHECK(point.grid()(0) == 1e-4);

  CHECK_THROWS_AS(DetectorScan(5.0, 0.0, -1e-4, 1e-4, 1), DomainError);
  CHECK_THROWS_AS(DetectorScan(5.0, 0.0, 1e-4, -1e-4, 11), DomainError);
  CHECK_THROWS_AS(DetectorScan(5.0, 0.0, -1e-4, 1e-4, 0), DomainError);
  CHECK_THROWS_AS(DetectorScan(0.0, 0.0, -1e-4, 1e-4, 11), DomainError);
  // cos^2(alpha) < (s/R)^2 at the scan edge.
  CHECK_THROWS_AS(DetectorScan(1.0, 1.5, -1.0, 1.0, 11), DomainError);
}

TEST_CASE("intensity profile invariants are enforced") {
  Eigen::ArrayXd s(3);
  s << 0.0, 1.0, 2.0;
  Eigen::ArrayXd ok(3);
  ok << 1.0, 2.0, 0.0;
  CHECK_NOTHROW(IntensityProfile(s, ok));
  Eigen::ArrayXd negative(3);
  negative << 1.0, -1e-30, 0.0;
  CHECK_THROWS_AS(IntensityProfile(s, negative), DomainError);
  Eigen::ArrayXd nan(3);
  nan << 1.0, NAN, 0.0;
  CHECK_THROWS_AS(IntensityProfile(s, nan), DomainError);
  Eigen::ArrayXd unordered(3);
  unordered << 0.0, 2.0, 1.0;
  CHECK_THROWS_AS(IntensityProfile(unordered, ok), DomainError);
  CHECK_THROWS_AS(IntensityProfile(s, Eigen::ArrayXd::Ones(2)), DomainError);
}

TEST_CASE("single slit profile is mirror symmetric") {
  const auto beam = fixtures::neutron(2.45e4);
  const auto g = SlitGeometry::single(90e-6, 3e-5);
  const auto profile =
      intensity_single(fixtures::reference_scan(201), g, beam, Truncation{300, 5, 0.01});
  const auto& v = profile.intensity();
  const double peak = v.maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    CHECK(std::abs(v(i) - v(v.size() - 1 - i)) <= 1e-9 * peak);
  }
  REQUIRE(profile.meta().has_value());
  CHECK(profile.meta()->kind == ProfileKind::single);
}

TEST_CASE("single slit on a zero-width scan") {
  const auto g = SlitGeometry::single(90e-6, 3e-5);
  const auto beam = fixtures::neutron(2.45e4);
  const auto scan = DetectorScan::point(5.0, 0.0, 50e-6);
  const auto profile = intensity_single(scan, g, beam, kSmall);
  REQUIRE(profile.size() == 1);
  CHECK(profile.intensity()(0) ==
        doctest::Approx(std::norm(slit_amplitude(Slit::first, 50e-6, g, beam, scan, kSmall)))
            .epsilon(1e-15));
}

TEST_CASE("intensity scales with the square of the amplitude") {
  const auto g = SlitGeometry::single(90e-6, 3e-5);
  const auto scan = fixtures::reference_scan(51);
  const auto once = intensity_single(scan, g, fixtures::neutron(1.0), kSmall);
  const auto twice = intensity_single(scan, g, fixtures::neutron(2.0), kSmall);
  for (Eigen::Index i = 0; i < once.size(); ++i) {
    CHECK(rel(twice.intensity()(i), 4.0 * once.intensity()(i)) < 1e-13);
  }
}

TEST_CASE("slit length only rescales the pattern at normal incidence") {
  const auto beam = fixtures::neutron(2.45e4);
  const auto scan = fixtures::reference_scan(101);
  const Truncation t{100, 5, 0.01};
  const auto base = intensity_single(scan, SlitGeometry::single(90e-6, 3e-5, 5e-3), beam, t);
  const Eigen::ArrayXd ref = base.intensity() / base.intensity().maxCoeff();
  for (double b : {1e-3, 2.5e-3, 10e-3}) {
    const auto other = intensity_single(scan, SlitGeometry::single(90e-6, 3e-5, b), beam, t);
    const Eigen::ArrayXd shape = other.intensity() / other.intensity().maxCoeff();
    CHECK((shape - ref).abs().maxCoeff() < 1e-3);
  }
}

TEST_CASE("two-slit kinds need a two-slit geometry") {
  const auto single = SlitGeometry::single(90e-6, 3e-5);
  const auto beam = fixtures::neutron();
  const auto scan = fixtures::reference_scan(11);
  CHECK_THROWS_AS(slit_amplitude(Slit::second, 0.0, single, beam, scan, kSmall), DomainError);
  CHECK_THROWS_AS(intensity_coherent(scan, single, beam, CoherenceParams(1, 1), kSmall),
                  DomainError);
  CHECK_THROWS_AS(compute_profile(ProfileKind::decoherent, scan, fixtures::reference_double(),
                                  beam, std::nullopt, kSmall),
                  DomainError);
}

TEST_CASE("coherent intensity is the squared coherent amplitude") {
  const auto g = fixtures::reference_double();
  const auto beam = fixtures::neutron(6.8e-2);
  const auto scan = fixtures::reference_scan(81);
  const CoherenceParams c(0.397, 0.918);
  const auto profile = intensity_coherent(scan, g, beam, c, kReference);
  const SlitPropagator first(Slit::first, g, beam, scan, kReference);
  const SlitPropagator second(Slit::second, g, beam, scan, kReference);
  for (Eigen::Index i = 0; i < profile.size(); ++i) {
    const double s = profile.s()(i);
    const double expected = std::norm(coherent_amplitude(s, g, beam, scan, c, kReference));
    CHECK(rel(profile.intensity()(i), expected) < 1e-12);
    const double a1 = c.c1() * std::abs(first.amplitude(s));
    const double a2 = c.c2() * std::abs(second.amplitude(s));
    CHECK(profile.intensity()(i) <= (a1 + a2) * (a1 + a2) * (1.0 + 1e-12));
    CHECK(profile.intensity()(i) >= (a1 - a2) * (a1 - a2) * (1.0 - 1e-12));
  }
}

TEST_CASE("degenerate weights reduce to a single slit") {
  const auto g = fixtures::reference_double();
  const auto beam = fixtures::neutron(6.8e-2);
  const auto scan = fixtures::reference_scan(41);
  const auto profile = intensity_coherent(scan, g, beam, CoherenceParams(1.0, 0.0), kSmall);
  for (Eigen::Index i = 0; i < profile.size(); ++i) {
    const double alone = std::norm(slit_amplitude(Slit::first, profile.s()(i), g, beam, scan, kSmall));
    CHECK(rel(profile.intensity()(i), alone) < 1e-13);
  }
}

TEST_CASE("equal slits and weights give the two-beam cosine law") {
  const auto g = SlitGeometry::dual(22e-6, 22e-6, 100e-6, 3e-5);
  const auto beam = fixtures::neutron(6.8e-2);
  const auto scan = fixtures::reference_scan(61);
  const auto profile = intensity_coherent(scan, g, beam, CoherenceParams(1.0, 1.0), kReference);
  const SlitPropagator first(Slit::first, g, beam, scan, kReference);
  for (Eigen::Index i = 0; i < profile.size(); ++i) {
    const double s = profile.s()(i);
    const double phi = beam.wavenumber() * s / std::hypot(5.0, s) * 122e-6;
    const double expected = std::norm(first.amplitude(s)) * (1.0 + std::cos(phi));
    CHECK(std::abs(profile.intensity()(i) - expected) <= 1e-10 * std::norm(first.amplitude(s)));
  }
}

TEST_CASE("decoherent intensity limits") {
  const auto g = fixtures::reference_double();
  const auto beam = fixtures::neutron(6.8e-2);
  const auto scan = fixtures::reference_scan(201);
  const auto coherent = intensity_coherent(scan, g, beam, CoherenceParams(0.397, 0.918), kReference);
  const auto full = intensity_decoherent(scan, g, beam, CoherenceParams(0.397, 0.918, 1.0), kReference);
  const auto none = intensity_decoherent(scan, g, beam, CoherenceParams(0.397, 0.918, 0.0), kReference);
  const CoherenceParams c(0.397, 0.918);
  const SlitPropagator first(Slit::first, g, beam, scan, kReference);
  const SlitPropagator second(Slit::second, g, beam, scan, kReference);
  for (Eigen::Index i = 0; i < coherent.size(); ++i) {
    const double s = coherent.s()(i);
    CHECK(rel(full.intensity()(i), 2.0 * coherent.intensity()(i)) < 1e-12);
    const double incoherent = c.c1() * c.c1() * std::norm(first.amplitude(s)) +
                              c.c2() * c.c2() * std::norm(second.amplitude(s));
    CHECK(rel(none.intensity()(i), incoherent) < 1e-12);
  }
}

TEST_CASE("decoherent intensity is nonnegative and assembles from its components") {
  const auto g = fixtures::reference_double();
  const auto beam = fixtures::neutron(6.8e-2);
  const auto scan = fixtures::reference_scan(101);
  const auto parts = two_slit_components(scan, g, beam, CoherenceParams(0.397, 0.918), kReference);
  for (double lambda : {0.0, 0.25, 0.59, 0.9, 1.0}) {
    const CoherenceParams c(0.397, 0.918, lambda);
    const auto profile = intensity_decoherent(scan, g, beam, c, kReference);
    CHECK((profile.intensity() >= 0.0).all());
    const double factor = 1.0 + c.alpha_overlap() * c.alpha_overlap();
    for (Eigen::Index i = 0; i < profile.size(); ++i) {
      const double expected = factor * (parts.direct(i) + lambda * parts.cross(i));
      CHECK(std::abs(profile.intensity()(i) - std::max(0.0, expected)) <=
            1e-12 * factor * parts.direct(i));
    }
  }
}

TEST_CASE("results do not depend on the thread count") {
  const auto g = fixtures::reference_double();
  const auto beam = fixtures::neutron(6.8e-2);
  const auto scan = fixtures::reference_scan(103);
  const CoherenceParams c(0.397, 0.918, 0.59);
  const auto one = intensity_decoherent(scan, g, beam, c, kSmall, 1);
  for (unsigned threads : {2u, 3u, 8u, 0u}) {
    const auto many = intensity_decoherent(scan, g, beam, c, kSmall, threads);
    CHECK((many.intensity() == one.intensity()).all());
    CHECK((many.s() == one.s()).all());
  }
}

TEST_CASE("compute_profile dispatches on the kind") {
  const auto g = fixtures::reference_double();
  const auto beam = fixtures::neutron(6.8e-2);
  const auto scan = fixtures::reference_scan(21);
  const CoherenceParams c(0.397, 0.918, 0.59);
  CHECK((compute_profile(ProfileKind::decoherent, scan, g, beam, c, kSmall).intensity() ==
         intensity_decoherent(scan, g, beam, c, kSmall).intensity())
            .all());
  CHECK((compute_profile(ProfileKind::coherent, scan, g, beam, c, kSmall).intensity() ==
         intensity_coherent(scan, g, beam, c, kSmall).intensity())
            .all());
  CHECK((compute_profile(ProfileKind::single, scan, g, beam, std::nullopt, kSmall).intensity() ==
         intensity_single(scan, g, beam, kSmall).intensity())
            .all());
}
