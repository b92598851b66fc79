#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string_view>

#include "nslit/beam.hpp"
#include "nslit/geometry.hpp"
#include "nslit/types.hpp"

namespace nslit {

/// Detector line at distance l behind the slit plane. The screen coordinate
/// s runs parallel to y and is measured from the z axis through the y origin
/// (the lower edge of slit 1); sin(beta) = s / R with R = sqrt(l^2 + s^2).
///
/// A scan is either a linear grid of `samples` >= 2 points on s_min < s_max,
/// or the single point s_min == s_max with samples == 1.
class DetectorScan {
 public:
  DetectorScan(double l, double alpha, double s_min, double s_max, int samples);
  static DetectorScan point(double l, double alpha, double s);

  double l() const noexcept { return l_; }
  double alpha() const noexcept { return alpha_; }
  double s_min() const noexcept { return s_min_; }
  double s_max() const noexcept { return s_max_; }
  int samples() const noexcept { return samples_; }

  /// s_i = ((N-1-i) s_min + i s_max) / (N-1). Exactly mirror-symmetric when
  /// s_min == -s_max.
  Eigen::ArrayXd grid() const;

  /// cos^2(alpha) - (s/R)^2; must be >= 0 for the obliquity factor.
  double obliquity_radicand(double s) const;

  friend bool operator==(const DetectorScan&, const DetectorScan&) = default;

 private:
  double l_;
  double alpha_;
  double s_min_;
  double s_max_;
  int samples_;
};

/// Superposition weights and the coherence degree of the which-slit
/// environment states.
class CoherenceParams {
 public:
  /// c1, c2 >= 0, not both zero; rescaled so that c1^2 + c2^2 = 1.
  CoherenceParams(double c1, double c2, double lambda_t = 1.0);

  double c1() const noexcept { return c1_; }
  double c2() const noexcept { return c2_; }
  double lambda_t() const noexcept { return lambda_t_; }
  /// |alpha_t|, the root <= 1 of Lambda = 2|alpha| / (1 + |alpha|^2).
  double alpha_overlap() const noexcept { return alpha_overlap_; }

  friend bool operator==(const CoherenceParams&, const CoherenceParams&) = default;

 private:
  double c1_;
  double c2_;
  double lambda_t_;
  double alpha_overlap_;
};

/// |alpha| from Lambda, computed as Lambda / (1 + sqrt(1 - Lambda^2)).
double alpha_overlap_from_coherence(double lambda_t);
/// 2 |alpha| / (1 + |alpha|^2).
double coherence_from_alpha_overlap(double alpha_overlap);

enum class ProfileKind { single, coherent, decoherent };

std::string_view to_string(ProfileKind kind);
std::optional<ProfileKind> profile_kind_from_string(std::string_view name);

/// Parameter record attached to computed profiles.
struct ProfileMeta {
  ProfileKind kind;
  SlitGeometry geometry;
  BeamParams beam;
  DetectorScan scan;
  std::optional<CoherenceParams> coherence;
  Truncation truncation;
};

/// Ordered (s, I) samples. s strictly increasing, I finite and >= 0.
class IntensityProfile {
 public:
  IntensityProfile(Eigen::ArrayXd s, Eigen::ArrayXd intensity,
                   std::optional<ProfileMeta> meta = std::nullopt);

  const Eigen::ArrayXd& s() const noexcept { return s_; }
  const Eigen::ArrayXd& intensity() const noexcept { return intensity_; }
  const std::optional<ProfileMeta>& meta() const noexcept { return meta_; }
  Eigen::Index size() const noexcept { return s_.size(); }

 private:
  Eigen::ArrayXd s_;
  Eigen::ArrayXd intensity_;
  std::optional<ProfileMeta> meta_;
};

/// Far-field amplitude radiated by one slit.
///
/// Mode-dependent factors are tabulated at construction; amplitude(s) then
/// costs O(m_max) per screen point. With T_mn = D_mn exp(i kz c) X_n, where X_n
/// is the x-integral at k sin(alpha), the per-point sum
///
///     sum_mn T_mn [i kz_mn + g] Y_m(k s / R)
///
/// is regrouped as sum_m Y_m (i P_m + g Q_m), P_m = sum_n T_mn kz_mn and
/// Q_m = sum_n T_mn, with g = (ik - 1/R) sqrt(cos^2 alpha - (s/R)^2).
class SlitPropagator {
 public:
  SlitPropagator(Slit slit, const SlitGeometry& geometry, const BeamParams& beam,
                 const DetectorScan& scan, const Truncation& truncation);

  /// psi_out at screen coordinate s (thread-safe; const).
  Complex amplitude(double s) const;

 private:
  Slit slit_;
  double width_;
  double offset_;
  double k_;
  double l_;
  double cos2_alpha_;
  Eigen::ArrayXcd axial_;     // P_m
  Eigen::ArrayXcd weight_;    // Q_m
};

Complex slit_amplitude(Slit slit, double s, const SlitGeometry& geometry,
                       const BeamParams& beam, const DetectorScan& scan,
                       const Truncation& truncation);

/// c1 psi_out1(s) + c2 psi_out2(s).
Complex coherent_amplitude(double s, const SlitGeometry& geometry, const BeamParams& beam,
                           const DetectorScan& scan, const CoherenceParams& coherence,
                           const Truncation& truncation);

/// `threads` = 0 selects std::thread::hardware_concurrency(). Results do not
/// depend on the thread count.
IntensityProfile intensity_single(const DetectorScan& scan, const SlitGeometry& geometry,
                                  const BeamParams& beam, const Truncation& truncation,
                                  unsigned threads = 0);

IntensityProfile intensity_coherent(const DetectorScan& scan, const SlitGeometry& geometry,
                                    const BeamParams& beam, const CoherenceParams& coherence,
                                    const Truncation& truncation, unsigned threads = 0);

/// (1 + |alpha|^2) (c1^2 |psi1|^2 + c2^2 |psi2|^2 + 2 c1 c2 Lambda Re[psi1* psi2]).
IntensityProfile intensity_decoherent(const DetectorScan& scan, const SlitGeometry& geometry,
                                      const BeamParams& beam, const CoherenceParams& coherence,
                                      const Truncation& truncation, unsigned threads = 0);

/// Pointwise pieces of the two-slit intensity on the scan grid:
/// direct = c1^2 |psi1|^2 + c2^2 |psi2|^2 and cross = 2 c1 c2 Re[psi1* psi2],
/// so that the decoherent intensity is (1 + |alpha|^2)(direct + Lambda cross).
struct TwoSlitComponents {
  Eigen::ArrayXd s;
  Eigen::ArrayXd direct;
  Eigen::ArrayXd cross;
};

TwoSlitComponents two_slit_components(const DetectorScan& scan, const SlitGeometry& geometry,
                                      const BeamParams& beam, const CoherenceParams& coherence,
                                      const Truncation& truncation, unsigned threads = 0);

/// Dispatches on `kind`; `coherence` is required for the two-slit kinds.
IntensityProfile compute_profile(ProfileKind kind, const DetectorScan& scan,
                                 const SlitGeometry& geometry, const BeamParams& beam,
                                 const std::optional<CoherenceParams>& coherence,
                                 const Truncation& truncation, unsigned threads = 0);

}  // namespace nslit
