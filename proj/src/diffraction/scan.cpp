#include <cmath>
#include <string>

#include "nslit/diffraction.hpp"

namespace nslit {

DetectorScan::DetectorScan(double l, double alpha, double s_min, double s_max, int samples)
    : l_(l), alpha_(alpha), s_min_(s_min), s_max_(s_max), samples_(samples) {
  if (!(l_ > 0.0) || !std::isfinite(l_)) throw DomainError("scan: l must be positive");
  if (!std::isfinite(alpha_)) throw DomainError("scan: alpha must be finite");
  if (!std::isfinite(s_min_) || !std::isfinite(s_max_)) {
    throw DomainError("scan: s range must be finite");
  }
  if (samples_ == 1) {
    if (s_min_ != s_max_) throw DomainError("scan: a single sample requires s_min == s_max");
  } else {
    if (samples_ < 2) throw DomainError("scan: samples must be >= 2");
    if (!(s_min_ < s_max_)) throw DomainError("scan: s_min must be < s_max");
  }
  const double reach = std::max(std::abs(s_min_), std::abs(s_max_));
  if (obliquity_radicand(reach) < 0.0) {
    throw DomainError("scan: cos^2(alpha) < (s/R)^2 inside the scan range");
  }
}

DetectorScan DetectorScan::point(double l, double alpha, double s) {
  return DetectorScan(l, alpha, s, s, 1);
}

Eigen::ArrayXd DetectorScan::grid() const {
  Eigen::ArrayXd s(samples_);
  if (samples_ == 1) {
    s(0) = s_min_;
    return s;
  }
  const double last = samples_ - 1.0;
  for (int i = 0; i < samples_; ++i) {
    s(i) = ((last - i) * s_min_ + i * s_max_) / last;
  }
  return s;
}

double DetectorScan::obliquity_radicand(double s) const {
  const double sin_beta = s / std::hypot(l_, s);
  const double cos_alpha = std::cos(alpha_);
  return cos_alpha * cos_alpha - sin_beta * sin_beta;
}

CoherenceParams::CoherenceParams(double c1, double c2, double lambda_t) {
  if (!(c1 >= 0.0) || !(c2 >= 0.0) || !std::isfinite(c1) || !std::isfinite(c2)) {
    throw DomainError("coherence: c1 and c2 must be finite and nonnegative");
  }
  const double norm = std::hypot(c1, c2);
  if (!(norm > 0.0)) throw DomainError("coherence: c1 and c2 cannot both be zero");
  if (!(lambda_t >= 0.0 && lambda_t <= 1.0)) {
    throw DomainError("coherence: lambda_t must lie in [0, 1]");
  }
  c1_ = c1 / norm;
  c2_ = c2 / norm;
  lambda_t_ = lambda_t;
  alpha_overlap_ = alpha_overlap_from_coherence(lambda_t);
}

double alpha_overlap_from_coherence(double lambda_t) {
  if (!(lambda_t >= 0.0 && lambda_t <= 1.0)) {
    throw DomainError("coherence: lambda_t must lie in [0, 1]");
  }
  return lambda_t / (1.0 + std::sqrt((1.0 - lambda_t) * (1.0 + lambda_t)));
}

double coherence_from_alpha_overlap(double alpha_overlap) {
  return 2.0 * alpha_overlap / (1.0 + alpha_overlap * alpha_overlap);
}

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::single: return "single";
    case ProfileKind::coherent: return "coherent";
    case ProfileKind::decoherent: return "decoherent";
  }
  return "unknown";
}

std::optional<ProfileKind> profile_kind_from_string(std::string_view name) {
  if (name == "single") return ProfileKind::single;
  if (name == "coherent") return ProfileKind::coherent;
  if (name == "decoherent") return ProfileKind::decoherent;
  return std::nullopt;
}

IntensityProfile::IntensityProfile(Eigen::ArrayXd s, Eigen::ArrayXd intensity,
                                   std::optional<ProfileMeta> meta)
    : s_(std::move(s)), intensity_(std::move(intensity)), meta_(std::move(meta)) {
  if (s_.size() != intensity_.size()) {
    throw DomainError("profile: s and intensity differ in length");
  }
  if (s_.size() == 0) throw DomainError("profile: no samples");
  for (Eigen::Index i = 0; i < s_.size(); ++i) {
    if (!std::isfinite(s_(i))) throw DomainError("profile: non-finite s");
    if (!std::isfinite(intensity_(i)) || intensity_(i) < 0.0) {
      throw DomainError("profile: intensity must be finite and >= 0 (row " +
                        std::to_string(i) + ")");
    }
    if (i > 0 && !(s_(i) > s_(i - 1))) {
      throw DomainError("profile: s must be strictly increasing (row " + std::to_string(i) + ")");
    }
  }
}

}  // namespace nslit
