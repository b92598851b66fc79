#pragma once

#include <optional>

namespace nslit {

/// Default slit length along x [m]. Macroscopic compared to the widths.
inline constexpr double kDefaultSlitLength = 5e-3;

enum class Slit { first = 1, second = 2 };

/// Aperture in an opaque plane. x runs along the slit length b, y across the
/// widths, z through the thickness c. Slit 1 occupies y in [0, a1]; slit 2
/// (double-slit only) occupies y in [a1 + d, a1 + d + a2].
class SlitGeometry {
 public:
  static SlitGeometry single(double a1, double c, double b = kDefaultSlitLength);
  static SlitGeometry dual(double a1, double a2, double d, double c,
                           double b = kDefaultSlitLength);

  double a1() const noexcept { return a1_; }
  std::optional<double> a2() const noexcept { return a2_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  std::optional<double> d() const noexcept { return d_; }

  bool is_double() const noexcept { return a2_.has_value(); }

  /// Width of the selected slit. Throws DomainError for slit 2 of a single slit.
  double width(Slit slit) const;
  /// Lower y edge of the selected slit (0 or a1 + d).
  double offset(Slit slit) const;

  SlitGeometry with_length(double b) const;

  friend bool operator==(const SlitGeometry&, const SlitGeometry&) = default;

 private:
  SlitGeometry(double a1, std::optional<double> a2, double b, double c, std::optional<double> d);

  double a1_;
  std::optional<double> a2_;
  double b_;
  double c_;
  std::optional<double> d_;
};

/// In-slit mode label. Only odd physical mode numbers carry a nonzero
/// Fourier coefficient, so the index stores m, n with physical numbers
/// 2m + 1 and 2n + 1.
struct ModeIndex {
  unsigned m = 0;
  unsigned n = 0;

  constexpr unsigned width_number() const noexcept { return 2 * m + 1; }
  constexpr unsigned length_number() const noexcept { return 2 * n + 1; }
};

/// Cut-off of the double mode series: m = 0..m_max, n = 0..n_max.
struct Truncation {
  int m_max = 600;
  int n_max = 10;
  double tail_tolerance = 0.01;

  /// Throws DomainError unless m_max >= 0, n_max >= 0, tail_tolerance > 0.
  void validate() const;

  friend bool operator==(const Truncation&, const Truncation&) = default;
};

}  // namespace nslit
