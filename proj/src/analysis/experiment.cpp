#include "nslit/analysis/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <vector>

namespace nslit::analysis {

namespace {

std::string_view trim(std::string_view v) {
  while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
  return v;
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size() || !std::isfinite(value)) {
    throw DomainError("csv: line " + std::to_string(line) + ": invalid number '" +
                      std::string(field) + "'");
  }
  return value;
}

void append_number(std::string& out, double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  out.append(buffer, result.ptr);
}

struct Fit {
  double scale = 1.0;
  double sse = 0.0;
  std::vector<double> s;
  std::vector<double> residuals;
};

Fit fit_at_shift(const IntensityProfile& profile, const ExperimentalTrace& trace, double shift,
                 bool fit_scale) {
  const double lo = profile.s()(0);
  const double hi = profile.s()(profile.size() - 1);
  std::vector<double> xs;
  std::vector<double> model;
  std::vector<double> data;
  for (Eigen::Index i = 0; i < trace.s.size(); ++i) {
    const double x = trace.s(i) - trace.shift - shift;
    if (x < lo || x > hi) continue;
    xs.push_back(trace.s(i));
    model.push_back(interpolate(profile, x));
    data.push_back(trace.counts(i) - trace.background);
  }
  Fit fit;
  if (xs.empty()) return fit;
  if (fit_scale) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      num += data[i] * model[i];
      den += model[i] * model[i];
    }
    fit.scale = den > 0.0 ? num / den : 1.0;
  }
  fit.s = xs;
  fit.residuals.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fit.residuals[i] = data[i] - fit.scale * model[i];
    fit.sse += fit.residuals[i] * fit.residuals[i];
  }
  return fit;
}

}  // namespace

void ExperimentalTrace::validate() const {
  if (s.size() != counts.size()) throw DomainError("trace: s and counts differ in length");
  if (s.size() == 0) throw DomainError("trace: no rows");
  if (!std::isfinite(shift) || !std::isfinite(background)) {
    throw DomainError("trace: shift and background must be finite");
  }
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (!(counts(i) >= 0.0)) throw DomainError("trace: counts must be >= 0");
    if (i > 0 && !(s(i) > s(i - 1))) throw DomainError("trace: s must be strictly increasing");
  }
}

std::pair<Eigen::ArrayXd, Eigen::ArrayXd> parse_two_column_csv(std::string_view text,
                                                               std::string_view header) {
  const std::string label(header);
  std::vector<double> first;
  std::vector<double> second;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (!seen_header) {
      if (line != header) throw DomainError("csv: line 1: expected header '" + label + "'");
      seen_header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw DomainError("csv: line " + std::to_string(line_no) + ": expected two fields");
    }
    first.push_back(parse_number(line.substr(0, comma), line_no));
    second.push_back(parse_number(line.substr(comma + 1), line_no));
  }
  if (!seen_header) throw DomainError("csv: empty input");
  const auto rows = static_cast<Eigen::Index>(first.size());
  return {Eigen::Map<const Eigen::ArrayXd>(first.data(), rows),
          Eigen::Map<const Eigen::ArrayXd>(second.data(), rows)};
}

ExperimentalTrace parse_trace_csv(std::string_view text) {
  auto [s, counts] = parse_two_column_csv(text, "s_m,counts");
  ExperimentalTrace trace;
  trace.s = std::move(s);
  trace.counts = std::move(counts);
  trace.validate();
  return trace;
}

std::string format_trace_csv(const ExperimentalTrace& trace) {
  std::string out = "s_m,counts\n";
  for (Eigen::Index i = 0; i < trace.s.size(); ++i) {
    append_number(out, trace.s(i));
    out += ',';
    append_number(out, trace.counts(i));
    out += '\n';
  }
  return out;
}

double interpolate(const Eigen::ArrayXd& s, const Eigen::ArrayXd& values, double x) {
  const Eigen::Index n = s.size();
  if (n == 0 || values.size() != n) throw DomainError("interpolate: mismatched samples");
  if (x < s(0) || x > s(n - 1)) throw DomainError("interpolate: x outside the sampled range");
  if (n == 1) return values(0);
  const auto it = std::upper_bound(s.data(), s.data() + n, x);
  const Eigen::Index hi = std::clamp<Eigen::Index>(it - s.data(), 1, n - 1);
  const Eigen::Index lo = hi - 1;
  const double t = (x - s(lo)) / (s(hi) - s(lo));
  return values(lo) + t * (values(hi) - values(lo));
}

double interpolate(const IntensityProfile& profile, double x) {
  return interpolate(profile.s(), profile.intensity(), x);
}

ComparisonReport compare_to_experiment(const IntensityProfile& profile,
                                       const ExperimentalTrace& trace,
                                       const CompareOptions& options) {
  trace.validate();
  std::vector<double> shifts{0.0};
  if (options.fit_shift) {
    if (!(options.shift_max >= options.shift_min)) {
      throw DomainError("compare: shift window is empty");
    }
    double step = options.shift_step;
    if (step == 0.0 && profile.size() > 1) {
      step = (profile.s()(profile.size() - 1) - profile.s()(0)) / double(profile.size() - 1);
    }
    if (!(step > 0.0)) throw DomainError("compare: shift step must be positive");
    const auto count = static_cast<long>(std::floor((options.shift_max - options.shift_min) / step + 1e-9));
    shifts.clear();
    for (long k = 0; k <= count; ++k) shifts.push_back(options.shift_min + double(k) * step);
  }

  std::optional<Fit> best;
  double best_shift = 0.0;
  double best_mse = std::numeric_limits<double>::infinity();
  for (double shift : shifts) {
    Fit fit = fit_at_shift(profile, trace, shift, options.fit_scale);
    if (fit.s.empty()) continue;
    const double mse = fit.sse / double(fit.s.size());
    if (!best || mse < best_mse) {
      best_mse = mse;
      best_shift = shift;
      best = std::move(fit);
    }
  }
  if (!best) {
    throw ComputationError("empty_overlap", "compare: trace does not overlap the model range");
  }

  ComparisonReport report;
  report.scale = best->scale;
  report.shift = best_shift;
  report.sse = best->sse;
  report.s = Eigen::Map<const Eigen::ArrayXd>(best->s.data(), static_cast<Eigen::Index>(best->s.size()));
  report.residuals = Eigen::Map<const Eigen::ArrayXd>(best->residuals.data(),
                                                      static_cast<Eigen::Index>(best->residuals.size()));
  return report;
}

CoherenceFit fit_coherence_degree(const TwoSlitComponents& components,
                                  const ExperimentalTrace& trace) {
  trace.validate();
  const auto& grid = components.s;
  if (grid.size() == 0 || components.direct.size() != grid.size() ||
      components.cross.size() != grid.size()) {
    throw DomainError("fit_coherence_degree: malformed components");
  }
  std::vector<double> y;
  std::vector<double> direct;
  std::vector<double> cross;
  for (Eigen::Index i = 0; i < trace.s.size(); ++i) {
    const double x = trace.s(i) - trace.shift;
    if (x < grid(0) || x > grid(grid.size() - 1)) continue;
    y.push_back(trace.counts(i) - trace.background);
    direct.push_back(interpolate(grid, components.direct, x));
    cross.push_back(interpolate(grid, components.cross, x));
  }
  if (y.empty()) {
    throw ComputationError("empty_overlap", "fit_coherence_degree: trace misses the model range");
  }

  double dd = 0.0, dc = 0.0, cc = 0.0, dy = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    dd += direct[i] * direct[i];
    dc += direct[i] * cross[i];
    cc += cross[i] * cross[i];
    dy += direct[i] * y[i];
    cy += cross[i] * y[i];
  }

  CoherenceFit fit;
  fit.points = static_cast<Eigen::Index>(y.size());
  const double det = dd * cc - dc * dc;
  double a = 0.0;
  double lambda = 0.0;
  bool interior = false;
  if (det > 0.0) {
    a = (dy * cc - cy * dc) / det;
    const double b = (dd * cy - dc * dy) / det;
    if (a > 0.0) {
      lambda = b / a;
      interior = lambda >= 0.0 && lambda <= 1.0;
    }
  }
  if (!interior) {
    // Best of the two boundary values, each with its own optimal scale.
    double best_sse = std::numeric_limits<double>::infinity();
    for (double candidate : {0.0, 1.0}) {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double m = direct[i] + candidate * cross[i];
        num += m * y[i];
        den += m * m;
      }
      const double scale = den > 0.0 ? num / den : 0.0;
      double sse = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = y[i] - scale * (direct[i] + candidate * cross[i]);
        sse += r * r;
      }
      if (sse < best_sse) {
        best_sse = sse;
        a = scale;
        lambda = candidate;
      }
    }
    fit.clamped = true;
  }
  fit.lambda_t = lambda;
  fit.scale = a;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - a * (direct[i] + lambda * cross[i]);
    fit.sse += r * r;
  }
  return fit;
}

}  // namespace nslit::analysis
