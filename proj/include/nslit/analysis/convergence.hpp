#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nslit/diffraction.hpp"

namespace nslit::analysis {

/// (m_max, n_max) pairs.
using TruncationLadder = std::vector<std::pair<int, int>>;

struct ConvergenceReport {
  TruncationLadder ladder;
  /// changes[i] compares ladder[i + 1] against ladder[i].
  std::vector<double> changes;
  double tail_tolerance = 0.0;
  /// Final step below tail_tolerance; false when the ladder has one rung.
  bool converged = false;
};

/// Throws DomainError unless the ladder is nonempty, nondecreasing in both
/// indices and strictly increasing in at least one between rungs.
void validate_ladder(const TruncationLadder& ladder);

/// Largest pointwise relative difference between two profiles after each is
/// scaled to unit peak: max_s |p(s) - c(s)| / c(s). The overall intensity
/// scale is a free amplitude parameter, so only the pattern shape is compared.
double max_relative_change(const Eigen::ArrayXd& previous, const Eigen::ArrayXd& current);

ConvergenceReport convergence_study(ProfileKind kind, const DetectorScan& scan,
                                    const SlitGeometry& geometry, const BeamParams& beam,
                                    const std::optional<CoherenceParams>& coherence,
                                    const TruncationLadder& ladder, double tail_tolerance,
                                    unsigned threads = 0);

}  // namespace nslit::analysis
