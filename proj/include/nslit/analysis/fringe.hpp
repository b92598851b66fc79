#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "nslit/diffraction.hpp"

namespace nslit::analysis {

/// Central-fringe contrast of a sampled profile.
struct FringeReport {
  double i_max = 0.0;
  double i_min = 0.0;
  double visibility = 0.0;
  double s_max = 0.0;
  double s_min_loc = 0.0;
  /// Which neighbouring minimum supplied i_min: "left" or "right".
  std::string min_side;
  bool refined = false;
};

struct VisibilityOptions {
  /// Only minima within this distance of the central maximum count as its
  /// neighbours. Unset: no limit.
  std::optional<double> window;
  /// Refine extremum values and locations with a parabola through the
  /// extremum and its two neighbours.
  bool parabolic_refinement = false;
};

/// (i_max - i_min) / (i_max + i_min). Requires i_max >= i_min >= 0 and a
/// positive sum.
double visibility(double i_max, double i_min);

/// Locates the global interior maximum and the lower of its two adjacent
/// local minima, then applies the contrast formula. An extremum is a sample
/// (or plateau of equal samples, reported at its leftmost point) strictly
/// above/below both neighbours. Throws NoFringeError when the profile has no
/// interior maximum or no neighbouring minimum.
FringeReport visibility(const IntensityProfile& profile, const VisibilityOptions& options = {});

/// Interior local maxima (plateau-compressed, leftmost index).
std::vector<Eigen::Index> local_maxima(const Eigen::ArrayXd& values);
/// Interior local minima (plateau-compressed, leftmost index).
std::vector<Eigen::Index> local_minima(const Eigen::ArrayXd& values);

/// Mean spacing of consecutive local maxima with |s| <= half_window.
/// Throws NoFringeError with fewer than two maxima.
double mean_fringe_period(const IntensityProfile& profile, double half_window);

}  // namespace nslit::analysis
