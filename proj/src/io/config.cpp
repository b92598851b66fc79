#include "nslit/io/config.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace nslit::io {

using nlohmann::json;

namespace {

// Typed access to one JSON object with path-qualified errors.
class Section {
 public:
  Section(const json& node, std::string path, std::set<std::string> keys)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_, "expected a JSON object");
    for (const auto& [key, value] : node_.items()) {
      if (!keys.count(key)) throw ConfigError(qualify(key), "unknown key");
    }
  }

  std::string qualify(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  const json& child(const std::string& key) const { return node_.at(key); }

  std::optional<double> number(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = node_.at(key);
    if (!v.is_number()) throw ConfigError(qualify(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(qualify(key), "must be finite");
    return x;
  }

  double required_number(const std::string& key) const {
    auto v = number(key);
    if (!v) throw ConfigError(qualify(key), "required");
    return *v;
  }

  std::optional<int> integer(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = node_.at(key);
    if (!v.is_number_integer()) throw ConfigError(qualify(key), "expected an integer");
    const auto x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
      throw ConfigError(qualify(key), "integer out of range");
    }
    return static_cast<int>(x);
  }

  std::optional<bool> boolean(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = node_.at(key);
    if (!v.is_boolean()) throw ConfigError(qualify(key), "expected true or false");
    return v.get<bool>();
  }

  std::optional<std::string> string(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = node_.at(key);
    if (!v.is_string()) throw ConfigError(qualify(key), "expected a string");
    return v.get<std::string>();
  }

  void positive(const std::string& key, double value) const {
    if (!(value > 0.0)) throw ConfigError(qualify(key), "must be > 0");
  }

 private:
  const json& node_;
  std::string path_;
};

BeamConfig parse_beam(const json& node) {
  const Section sec(node, "beam", {"mass_kg", "energy_J", "wavelength_m", "amplitude", "hbar_Js"});
  BeamConfig beam;
  beam.mass_kg = sec.required_number("mass_kg");
  sec.positive("mass_kg", beam.mass_kg);
  beam.energy_J = sec.number("energy_J");
  beam.wavelength_m = sec.number("wavelength_m");
  if (beam.energy_J.has_value() == beam.wavelength_m.has_value()) {
    throw ConfigError("beam.energy_J", "give exactly one of energy_J or wavelength_m");
  }
  if (beam.energy_J) sec.positive("energy_J", *beam.energy_J);
  if (beam.wavelength_m) sec.positive("wavelength_m", *beam.wavelength_m);
  beam.amplitude = sec.number("amplitude").value_or(beam.amplitude);
  sec.positive("amplitude", beam.amplitude);
  beam.hbar_Js = sec.number("hbar_Js").value_or(beam.hbar_Js);
  sec.positive("hbar_Js", beam.hbar_Js);
  return beam;
}

GeometryConfig parse_geometry(const json& node) {
  const Section sec(node, "geometry", {"a1_m", "a2_m", "b_m", "c_m", "d_m"});
  GeometryConfig g;
  g.a1_m = sec.required_number("a1_m");
  sec.positive("a1_m", g.a1_m);
  g.c_m = sec.required_number("c_m");
  sec.positive("c_m", g.c_m);
  g.b_m = sec.number("b_m").value_or(g.b_m);
  sec.positive("b_m", g.b_m);
  g.a2_m = sec.number("a2_m");
  g.d_m = sec.number("d_m");
  if (g.a2_m.has_value() != g.d_m.has_value()) {
    throw ConfigError(g.a2_m ? "geometry.d_m" : "geometry.a2_m",
                      "a2_m and d_m must be given together for a double slit");
  }
  if (g.a2_m) sec.positive("a2_m", *g.a2_m);
  if (g.d_m) sec.positive("d_m", *g.d_m);
  return g;
}

ScanConfig parse_scan(const json& node) {
  const Section sec(node, "scan", {"l_m", "alpha_rad", "s_min_m", "s_max_m", "samples"});
  ScanConfig scan;
  scan.l_m = sec.required_number("l_m");
  sec.positive("l_m", scan.l_m);
  scan.alpha_rad = sec.number("alpha_rad").value_or(scan.alpha_rad);
  scan.s_min_m = sec.number("s_min_m").value_or(scan.s_min_m);
  scan.s_max_m = sec.number("s_max_m").value_or(scan.s_max_m);
  scan.samples = sec.integer("samples").value_or(scan.samples);
  if (scan.samples < 2) throw ConfigError("scan.samples", "must be >= 2");
  if (!(scan.s_min_m < scan.s_max_m)) throw ConfigError("scan.s_max_m", "must exceed s_min_m");
  try {
    DetectorScan(scan.l_m, scan.alpha_rad, scan.s_min_m, scan.s_max_m, scan.samples);
  } catch (const DomainError& e) {
    throw ConfigError("scan.alpha_rad", e.what());
  }
  return scan;
}

CoherenceConfig parse_coherence(const json& node) {
  const Section sec(node, "coherence", {"c1", "c2", "lambda_t"});
  CoherenceConfig c;
  c.c1 = sec.required_number("c1");
  c.c2 = sec.required_number("c2");
  if (c.c1 < 0.0) throw ConfigError("coherence.c1", "must be >= 0");
  if (c.c2 < 0.0) throw ConfigError("coherence.c2", "must be >= 0");
  if (c.c1 == 0.0 && c.c2 == 0.0) throw ConfigError("coherence.c2", "c1 and c2 cannot both be 0");
  c.lambda_t = sec.number("lambda_t");
  if (c.lambda_t && !(*c.lambda_t >= 0.0 && *c.lambda_t <= 1.0)) {
    throw ConfigError("coherence.lambda_t", "must lie in [0, 1]");
  }
  return c;
}

analysis::TruncationLadder parse_ladder(const json& node) {
  if (!node.is_array()) throw ConfigError("truncation.ladder", "expected an array of [m_max, n_max]");
  analysis::TruncationLadder ladder;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const auto& rung = node[i];
    const std::string path = "truncation.ladder[" + std::to_string(i) + "]";
    if (!rung.is_array() || rung.size() != 2 || !rung[0].is_number_integer() ||
        !rung[1].is_number_integer()) {
      throw ConfigError(path, "expected [m_max, n_max] integers");
    }
    ladder.emplace_back(rung[0].get<int>(), rung[1].get<int>());
  }
  try {
    analysis::validate_ladder(ladder);
  } catch (const DomainError& e) {
    throw ConfigError("truncation.ladder", e.what());
  }
  return ladder;
}

TruncationConfig parse_truncation(const json& node) {
  const Section sec(node, "truncation", {"m_max", "n_max", "tail_tolerance", "ladder"});
  TruncationConfig t;
  t.m_max = sec.integer("m_max").value_or(t.m_max);
  t.n_max = sec.integer("n_max").value_or(t.n_max);
  t.tail_tolerance = sec.number("tail_tolerance").value_or(t.tail_tolerance);
  if (t.m_max < 0) throw ConfigError("truncation.m_max", "must be >= 0");
  if (t.n_max < 0) throw ConfigError("truncation.n_max", "must be >= 0");
  sec.positive("tail_tolerance", t.tail_tolerance);
  if (sec.has("ladder")) t.ladder = parse_ladder(sec.child("ladder"));
  return t;
}

OutputConfig parse_outputs(const json& node) {
  const Section sec(node, "outputs", {"csv", "svg", "report"});
  return OutputConfig{sec.string("csv"), sec.string("svg"), sec.string("report")};
}

CompareConfig parse_compare(const json& node) {
  const Section sec(node, "compare",
                    {"trace_csv", "fit_scale", "fit_shift", "shift_min_m", "shift_max_m",
                     "shift_step_m", "trace_shift_m", "background", "fit_lambda_t"});
  CompareConfig c;
  c.trace_csv = sec.string("trace_csv");
  c.fit_scale = sec.boolean("fit_scale").value_or(c.fit_scale);
  c.fit_shift = sec.boolean("fit_shift").value_or(c.fit_shift);
  c.shift_min_m = sec.number("shift_min_m").value_or(c.shift_min_m);
  c.shift_max_m = sec.number("shift_max_m").value_or(c.shift_max_m);
  c.shift_step_m = sec.number("shift_step_m").value_or(c.shift_step_m);
  c.trace_shift_m = sec.number("trace_shift_m").value_or(c.trace_shift_m);
  c.background = sec.number("background").value_or(c.background);
  c.fit_lambda_t = sec.boolean("fit_lambda_t").value_or(c.fit_lambda_t);
  if (c.shift_max_m < c.shift_min_m) throw ConfigError("compare.shift_max_m", "must be >= shift_min_m");
  if (c.shift_step_m < 0.0) throw ConfigError("compare.shift_step_m", "must be >= 0");
  return c;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json document;
  try {
    document = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config_json(document);
}

RunConfig parse_config_json(const json& document) {
  const Section root(document, "",
                     {"beam", "geometry", "scan", "coherence", "truncation", "outputs", "compare"});
  RunConfig config;
  if (!root.has("beam")) throw ConfigError("beam", "required");
  if (!root.has("geometry")) throw ConfigError("geometry", "required");
  if (!root.has("scan")) throw ConfigError("scan", "required");
  config.beam = parse_beam(root.child("beam"));
  config.geometry = parse_geometry(root.child("geometry"));
  config.scan = parse_scan(root.child("scan"));
  if (root.has("coherence")) config.coherence = parse_coherence(root.child("coherence"));
  if (root.has("truncation")) config.truncation = parse_truncation(root.child("truncation"));
  if (root.has("outputs")) config.outputs = parse_outputs(root.child("outputs"));
  if (root.has("compare")) config.compare = parse_compare(root.child("compare"));
  return config;
}

json to_json(const RunConfig& c) {
  json beam = {{"mass_kg", c.beam.mass_kg}, {"amplitude", c.beam.amplitude}, {"hbar_Js", c.beam.hbar_Js}};
  if (c.beam.energy_J) beam["energy_J"] = *c.beam.energy_J;
  if (c.beam.wavelength_m) beam["wavelength_m"] = *c.beam.wavelength_m;

  json geometry = {{"a1_m", c.geometry.a1_m}, {"b_m", c.geometry.b_m}, {"c_m", c.geometry.c_m}};
  if (c.geometry.a2_m) geometry["a2_m"] = *c.geometry.a2_m;
  if (c.geometry.d_m) geometry["d_m"] = *c.geometry.d_m;

  json scan = {{"l_m", c.scan.l_m},
               {"alpha_rad", c.scan.alpha_rad},
               {"s_min_m", c.scan.s_min_m},
               {"s_max_m", c.scan.s_max_m},
               {"samples", c.scan.samples}};

  json truncation = {{"m_max", c.truncation.m_max},
                     {"n_max", c.truncation.n_max},
                     {"tail_tolerance", c.truncation.tail_tolerance}};
  if (c.truncation.ladder) {
    json ladder = json::array();
    for (const auto& [m, n] : *c.truncation.ladder) ladder.push_back({m, n});
    truncation["ladder"] = ladder;
  }

  json outputs = json::object();
  if (c.outputs.csv) outputs["csv"] = *c.outputs.csv;
  if (c.outputs.svg) outputs["svg"] = *c.outputs.svg;
  if (c.outputs.report) outputs["report"] = *c.outputs.report;

  json out = {{"beam", beam}, {"geometry", geometry}, {"scan", scan},
              {"truncation", truncation}, {"outputs", outputs}};
  if (c.coherence) {
    json coherence = {{"c1", c.coherence->c1}, {"c2", c.coherence->c2}};
    if (c.coherence->lambda_t) coherence["lambda_t"] = *c.coherence->lambda_t;
    out["coherence"] = coherence;
  }
  if (c.compare) {
    json compare = {{"fit_scale", c.compare->fit_scale},
                    {"fit_shift", c.compare->fit_shift},
                    {"shift_min_m", c.compare->shift_min_m},
                    {"shift_max_m", c.compare->shift_max_m},
                    {"shift_step_m", c.compare->shift_step_m},
                    {"trace_shift_m", c.compare->trace_shift_m},
                    {"background", c.compare->background},
                    {"fit_lambda_t", c.compare->fit_lambda_t}};
    if (c.compare->trace_csv) compare["trace_csv"] = *c.compare->trace_csv;
    out["compare"] = compare;
  }
  return out;
}

BeamParams RunConfig::beam_params() const {
  if (beam.energy_J) {
    return BeamParams::from_energy(beam.mass_kg, *beam.energy_J, beam.amplitude, beam.hbar_Js);
  }
  return BeamParams::from_wavelength(beam.mass_kg, beam.wavelength_m.value(), beam.amplitude,
                                     beam.hbar_Js);
}

SlitGeometry RunConfig::slit_geometry() const {
  if (geometry.a2_m) {
    return SlitGeometry::dual(geometry.a1_m, *geometry.a2_m, geometry.d_m.value(), geometry.c_m,
                              geometry.b_m);
  }
  return SlitGeometry::single(geometry.a1_m, geometry.c_m, geometry.b_m);
}

DetectorScan RunConfig::detector_scan() const {
  return DetectorScan(scan.l_m, scan.alpha_rad, scan.s_min_m, scan.s_max_m, scan.samples);
}

std::optional<CoherenceParams> RunConfig::coherence_params() const {
  if (!coherence) return std::nullopt;
  return CoherenceParams(coherence->c1, coherence->c2, coherence->lambda_t.value_or(1.0));
}

Truncation RunConfig::truncation_params() const {
  return Truncation{truncation.m_max, truncation.n_max, truncation.tail_tolerance};
}

analysis::TruncationLadder RunConfig::ladder() const {
  if (truncation.ladder) return *truncation.ladder;
  return {{600, 10}, {1200, 15}};
}

ProfileKind RunConfig::default_kind() const {
  if (!geometry.a2_m) return ProfileKind::single;
  if (coherence && coherence->lambda_t) return ProfileKind::decoherent;
  return ProfileKind::coherent;
}

}  // namespace nslit::io
