#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nslit/analysis/convergence.hpp"
#include "nslit/analysis/experiment.hpp"
#include "nslit/diffraction.hpp"

namespace nslit::io {

/// Invalid run configuration. `field()` is the dotted path of the offending
/// key ("scan.samples"), empty for document-level problems.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct BeamConfig {
  double mass_kg = 0.0;
  std::optional<double> energy_J;
  std::optional<double> wavelength_m;
  double amplitude = 1.0;
  double hbar_Js = kDefaultHbar;

  friend bool operator==(const BeamConfig&, const BeamConfig&) = default;
};

struct GeometryConfig {
  double a1_m = 0.0;
  std::optional<double> a2_m;
  double b_m = kDefaultSlitLength;
  double c_m = 0.0;
  std::optional<double> d_m;

  friend bool operator==(const GeometryConfig&, const GeometryConfig&) = default;
};

struct ScanConfig {
  double l_m = 0.0;
  double alpha_rad = 0.0;
  double s_min_m = -500e-6;
  double s_max_m = 500e-6;
  int samples = 801;

  friend bool operator==(const ScanConfig&, const ScanConfig&) = default;
};

struct CoherenceConfig {
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> lambda_t;

  friend bool operator==(const CoherenceConfig&, const CoherenceConfig&) = default;
};

struct TruncationConfig {
  int m_max = 600;
  int n_max = 10;
  double tail_tolerance = 0.01;
  std::optional<analysis::TruncationLadder> ladder;

  friend bool operator==(const TruncationConfig&, const TruncationConfig&) = default;
};

struct OutputConfig {
  std::optional<std::string> csv;
  std::optional<std::string> svg;
  std::optional<std::string> report;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct CompareConfig {
  std::optional<std::string> trace_csv;
  bool fit_scale = true;
  bool fit_shift = false;
  double shift_min_m = -50e-6;
  double shift_max_m = 50e-6;
  double shift_step_m = 0.0;
  double trace_shift_m = 0.0;
  double background = 0.0;
  /// Also fit lambda_t by least squares (two-slit geometries).
  bool fit_lambda_t = false;

  friend bool operator==(const CompareConfig&, const CompareConfig&) = default;
};

/// Run description as written by the user, with defaults filled in.
/// Absent a2/d selects single-slit mode; absent lambda_t selects the fully
/// coherent two-slit intensity.
struct RunConfig {
  BeamConfig beam;
  GeometryConfig geometry;
  ScanConfig scan;
  std::optional<CoherenceConfig> coherence;
  TruncationConfig truncation;
  OutputConfig outputs;
  std::optional<CompareConfig> compare;

  BeamParams beam_params() const;
  SlitGeometry slit_geometry() const;
  DetectorScan detector_scan() const;
  std::optional<CoherenceParams> coherence_params() const;
  Truncation truncation_params() const;
  analysis::TruncationLadder ladder() const;

  /// single for a single-slit geometry; otherwise decoherent when lambda_t
  /// is set, coherent when not.
  ProfileKind default_kind() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates a UTF-8 JSON run configuration. Unknown keys,
/// type mismatches and invariant violations raise ConfigError naming the
/// field path.
RunConfig parse_config(std::string_view text);
RunConfig parse_config_json(const nlohmann::json& document);

/// Resolved configuration (defaults included); parse_config(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& config);

}  // namespace nslit::io
