#include "nslit/analysis/convergence.hpp"

#include <cmath>
#include <limits>

namespace nslit::analysis {

void validate_ladder(const TruncationLadder& ladder) {
  if (ladder.empty()) throw DomainError("convergence: ladder is empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const auto [m, n] = ladder[i];
    if (m < 0 || n < 0) throw DomainError("convergence: ladder indices must be >= 0");
    if (i == 0) continue;
    const auto [pm, pn] = ladder[i - 1];
    if (m < pm || n < pn || (m == pm && n == pn)) {
      throw DomainError("convergence: ladder must increase from rung to rung");
    }
  }
}

double max_relative_change(const Eigen::ArrayXd& previous, const Eigen::ArrayXd& current) {
  if (previous.size() != current.size() || current.size() == 0) {
    throw DomainError("convergence: profiles differ in length");
  }
  const double p_peak = previous.maxCoeff();
  const double c_peak = current.maxCoeff();
  if (!(p_peak > 0.0) || !(c_peak > 0.0)) {
    throw ComputationError("convergence", "convergence: profile is identically zero");
  }
  double worst = 0.0;
  for (Eigen::Index i = 0; i < current.size(); ++i) {
    const double p = previous(i) / p_peak;
    const double c = current(i) / c_peak;
    if (p == c) continue;
    const double change =
        c > 0.0 ? std::abs(p - c) / c : std::numeric_limits<double>::infinity();
    worst = std::max(worst, change);
  }
  return worst;
}

ConvergenceReport convergence_study(ProfileKind kind, const DetectorScan& scan,
                                    const SlitGeometry& geometry, const BeamParams& beam,
                                    const std::optional<CoherenceParams>& coherence,
                                    const TruncationLadder& ladder, double tail_tolerance,
                                    unsigned threads) {
  validate_ladder(ladder);
  if (!(tail_tolerance > 0.0)) throw DomainError("convergence: tail_tolerance must be positive");

  ConvergenceReport report;
  report.ladder = ladder;
  report.tail_tolerance = tail_tolerance;

  Eigen::ArrayXd previous;
  for (const auto& [m, n] : ladder) {
    const Truncation truncation{m, n, tail_tolerance};
    const auto profile = compute_profile(kind, scan, geometry, beam, coherence, truncation, threads);
    if (previous.size() != 0) {
      report.changes.push_back(max_relative_change(previous, profile.intensity()));
    }
    previous = profile.intensity();
  }
  report.converged = !report.changes.empty() && report.changes.back() < tail_tolerance;
  return report;
}

}  // namespace nslit::analysis
