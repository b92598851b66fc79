#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <utility>

#include "nslit/diffraction.hpp"

namespace nslit::analysis {

/// Measured counts along the screen coordinate. `shift` is a known offset of
/// the measured s origin relative to the model origin (model is evaluated at
/// s - shift); `background` is subtracted from the counts.
struct ExperimentalTrace {
  Eigen::ArrayXd s;
  Eigen::ArrayXd counts;
  double shift = 0.0;
  double background = 0.0;

  /// Equal lengths, at least one row, s strictly increasing, counts >= 0.
  void validate() const;
};

/// Rows of two decimal columns under the given header line (LF or CRLF).
/// Throws DomainError naming the offending line.
std::pair<Eigen::ArrayXd, Eigen::ArrayXd> parse_two_column_csv(std::string_view text,
                                                               std::string_view header);

/// Parses the `s_m,counts` CSV format (header line required, LF or CRLF).
/// Throws DomainError naming the offending line.
ExperimentalTrace parse_trace_csv(std::string_view text);
std::string format_trace_csv(const ExperimentalTrace& trace);

struct CompareOptions {
  bool fit_scale = true;
  bool fit_shift = false;
  double shift_min = -50e-6;
  double shift_max = 50e-6;
  /// 0 selects the profile's grid spacing.
  double shift_step = 0.0;
};

struct ComparisonReport {
  double scale = 1.0;
  double shift = 0.0;
  double sse = 0.0;
  /// Trace abscissae that fell inside the model range, and their residuals
  /// (counts - background) - scale * model(s - trace.shift - shift).
  Eigen::ArrayXd s;
  Eigen::ArrayXd residuals;
};

/// Piecewise-linear interpolation of (s, values) at x; s strictly increasing
/// and x inside [s.front, s.back].
double interpolate(const Eigen::ArrayXd& s, const Eigen::ArrayXd& values, double x);
double interpolate(const IntensityProfile& profile, double x);

/// Least-squares scale (closed form) and optional grid-searched shift. The
/// shift minimising the mean squared residual over the overlap wins; ties go
/// to the smaller shift. Throws ComputationError("empty_overlap") when no
/// trace point lands inside the model range.
ComparisonReport compare_to_experiment(const IntensityProfile& profile,
                                       const ExperimentalTrace& trace,
                                       const CompareOptions& options = {});

struct CoherenceFit {
  double lambda_t = 0.0;
  /// Multiplies direct + lambda_t * cross (absorbs 1 + |alpha|^2).
  double scale = 0.0;
  double sse = 0.0;
  /// lambda_t hit the [0, 1] boundary.
  bool clamped = false;
  Eigen::Index points = 0;
};

/// Least-squares coherence degree: minimises
/// sum ((counts - background) - a direct - b cross)^2 over the trace points
/// inside the component grid (model evaluated at s - trace.shift), then
/// lambda_t = b / a, clamped to [0, 1] with a refit of a when outside.
CoherenceFit fit_coherence_degree(const TwoSlitComponents& components,
                                  const ExperimentalTrace& trace);

}  // namespace nslit::analysis
