#include "nslit/analysis/fringe.hpp"

#include <cmath>

namespace nslit::analysis {

namespace {

// sign = +1 finds maxima, -1 minima.
std::vector<Eigen::Index> extrema(const Eigen::ArrayXd& v, double sign) {
  std::vector<Eigen::Index> out;
  const Eigen::Index n = v.size();
  Eigen::Index i = 1;
  while (i < n - 1) {
    // Extend over a plateau of equal samples starting at i.
    Eigen::Index j = i;
    while (j + 1 < n && v(j + 1) == v(i)) ++j;
    if (j == n - 1) break;
    if (sign * (v(i) - v(i - 1)) > 0.0 && sign * (v(i) - v(j + 1)) > 0.0) out.push_back(i);
    i = j + 1;
  }
  return out;
}

struct Refined {
  double s;
  double value;
};

Refined refine(const IntensityProfile& p, Eigen::Index i) {
  const auto& s = p.s();
  const auto& v = p.intensity();
  if (i <= 0 || i >= s.size() - 1) return {s(i), v(i)};
  const double h0 = s(i) - s(i - 1);
  const double h1 = s(i + 1) - s(i);
  const double d0 = (v(i) - v(i - 1)) / h0;
  const double d1 = (v(i + 1) - v(i)) / h1;
  const double curvature = 2.0 * (d1 - d0) / (h0 + h1);
  if (curvature == 0.0) return {s(i), v(i)};
  // Vertex of the interpolating parabola, measured from s(i).
  const double slope = (d0 * h1 + d1 * h0) / (h0 + h1);
  const double shift = -slope / curvature;
  if (std::abs(shift) > std::max(h0, h1)) return {s(i), v(i)};
  return {s(i) + shift, v(i) + slope * shift + 0.5 * curvature * shift * shift};
}

}  // namespace

double visibility(double i_max, double i_min) {
  if (!(i_min >= 0.0) || !(i_max >= i_min) || !(i_max + i_min > 0.0)) {
    throw DomainError("visibility: require i_max >= i_min >= 0 and i_max > 0");
  }
  return (i_max - i_min) / (i_max + i_min);
}

std::vector<Eigen::Index> local_maxima(const Eigen::ArrayXd& values) { return extrema(values, 1.0); }

std::vector<Eigen::Index> local_minima(const Eigen::ArrayXd& values) { return extrema(values, -1.0); }

FringeReport visibility(const IntensityProfile& profile, const VisibilityOptions& options) {
  if (profile.size() < 5) throw DomainError("visibility: profile needs at least 5 samples");
  const auto& s = profile.s();
  const auto& v = profile.intensity();

  const auto maxima = local_maxima(v);
  if (maxima.empty()) throw NoFringeError("visibility: profile has no interior maximum");
  Eigen::Index top = maxima.front();
  for (auto i : maxima) {
    if (v(i) > v(top)) top = i;
  }

  std::optional<Eigen::Index> left;
  std::optional<Eigen::Index> right;
  for (auto i : local_minima(v)) {
    if (options.window && std::abs(s(i) - s(top)) > *options.window) continue;
    if (i < top) left = i;
    if (i > top && !right) right = i;
  }
  if (!left && !right) {
    throw NoFringeError("visibility: no local minimum next to the central maximum");
  }

  Eigen::Index low;
  std::string side;
  if (left && (!right || v(*left) <= v(*right))) {
    low = *left;
    side = "left";
  } else {
    low = *right;
    side = "right";
  }

  FringeReport report;
  report.min_side = side;
  if (options.parabolic_refinement) {
    const Refined hi = refine(profile, top);
    const Refined lo = refine(profile, low);
    report.i_max = std::max(hi.value, v(top));
    report.i_min = std::clamp(lo.value, 0.0, v(low));
    report.s_max = hi.s;
    report.s_min_loc = lo.s;
    report.refined = true;
  } else {
    report.i_max = v(top);
    report.i_min = v(low);
    report.s_max = s(top);
    report.s_min_loc = s(low);
  }
  report.visibility = visibility(report.i_max, report.i_min);
  return report;
}

double mean_fringe_period(const IntensityProfile& profile, double half_window) {
  const auto& s = profile.s();
  std::vector<double> peaks;
  for (auto i : local_maxima(profile.intensity())) {
    if (std::abs(s(i)) <= half_window) peaks.push_back(s(i));
  }
  if (peaks.size() < 2) throw NoFringeError("mean_fringe_period: fewer than two maxima in window");
  return (peaks.back() - peaks.front()) / double(peaks.size() - 1);
}

}  // namespace nslit::analysis
