#include "nslit/io/run.hpp"

#include <algorithm>
#include <filesystem>
#include <nlohmann/json.hpp>

#include "nslit/analysis/convergence.hpp"
#include "nslit/analysis/experiment.hpp"
#include "nslit/analysis/fringe.hpp"
#include "nslit/io/config.hpp"
#include "nslit/io/output.hpp"

namespace nslit::io {

using nlohmann::json;

namespace {

struct Artifacts {
  IntensityProfile profile;
  json metrics = json::object();
  std::optional<analysis::ExperimentalTrace> trace;
};

json extrema_json(const IntensityProfile& profile) {
  json maxima = json::array();
  json minima = json::array();
  for (auto i : analysis::local_maxima(profile.intensity())) maxima.push_back(profile.s()(i));
  for (auto i : analysis::local_minima(profile.intensity())) minima.push_back(profile.s()(i));
  Eigen::Index peak = 0;
  profile.intensity().maxCoeff(&peak);
  return {{"center_m", profile.s()(peak)},
          {"peak_intensity", profile.intensity()(peak)},
          {"maxima_m", maxima},
          {"minima_m", minima}};
}

json fringe_json(const analysis::FringeReport& r) {
  return {{"i_max", r.i_max},   {"i_min", r.i_min},         {"visibility", r.visibility},
          {"s_max_m", r.s_max}, {"s_min_m", r.s_min_loc},   {"min_side", r.min_side},
          {"refined", r.refined}};
}

json try_visibility(const IntensityProfile& profile) {
  try {
    return fringe_json(analysis::visibility(profile));
  } catch (const NoFringeError&) {
    return nullptr;
  } catch (const DomainError&) {
    return nullptr;
  }
}

json derived_json(const RunConfig& config, ProfileKind kind) {
  const BeamParams beam = config.beam_params();
  json derived = {{"wavenumber_per_m", beam.wavenumber()},
                  {"wavelength_m", beam.wavelength()},
                  {"energy_J", beam.energy()},
                  {"kind", std::string(to_string(kind))}};
  if (const auto coherence = config.coherence_params()) {
    derived["c1_normalized"] = coherence->c1();
    derived["c2_normalized"] = coherence->c2();
    if (config.coherence->lambda_t) derived["alpha_overlap"] = coherence->alpha_overlap();
  }
  return derived;
}

ProfileKind two_slit_kind(const RunConfig& config) {
  if (!config.geometry.a2_m) {
    throw ConfigError("geometry.a2_m", "the double subcommand needs a double-slit geometry");
  }
  if (!config.coherence) throw ConfigError("coherence", "required for double-slit intensities");
  return config.default_kind();
}

ProfileKind analysis_kind(const RunConfig& config) {
  if (config.geometry.a2_m && !config.coherence) {
    throw ConfigError("coherence", "required for double-slit intensities");
  }
  return config.default_kind();
}

IntensityProfile compute(const RunConfig& config, ProfileKind kind, const Truncation& truncation,
                         unsigned threads) {
  return compute_profile(kind, config.detector_scan(), config.slit_geometry(),
                         config.beam_params(), config.coherence_params(), truncation, threads);
}

Artifacts run_single(const RunConfig& config, unsigned threads) {
  auto profile = compute(config, ProfileKind::single, config.truncation_params(), threads);
  json metrics = {{"extrema", extrema_json(profile)}};
  return {std::move(profile), std::move(metrics), std::nullopt};
}

Artifacts run_double(const RunConfig& config, unsigned threads) {
  auto profile = compute(config, two_slit_kind(config), config.truncation_params(), threads);
  json metrics = {{"extrema", extrema_json(profile)}, {"visibility", try_visibility(profile)}};
  return {std::move(profile), std::move(metrics), std::nullopt};
}

Artifacts run_visibility(const RunConfig& config, const RunRequest& request, unsigned threads) {
  std::optional<IntensityProfile> profile;
  if (request.profile) {
    try {
      profile = parse_profile_csv(read_file(*request.profile));
    } catch (const DomainError& e) {
      throw IoError("profile '" + *request.profile + "': " + e.what());
    }
  } else {
    profile = compute(config, analysis_kind(config), config.truncation_params(), threads);
  }
  const auto report = analysis::visibility(*profile);
  json metrics = {{"visibility", fringe_json(report)}};
  if (request.profile) metrics["source_profile"] = *request.profile;
  return {std::move(*profile), std::move(metrics), std::nullopt};
}

Artifacts run_converge(const RunConfig& config, unsigned threads) {
  const auto kind = analysis_kind(config);
  const auto ladder = config.ladder();
  const auto study = analysis::convergence_study(
      kind, config.detector_scan(), config.slit_geometry(), config.beam_params(),
      config.coherence_params(), ladder, config.truncation.tail_tolerance, threads);
  const auto [m, n] = ladder.back();
  auto profile = compute(config, kind, Truncation{m, n, config.truncation.tail_tolerance}, threads);
  json rungs = json::array();
  for (const auto& [rm, rn] : study.ladder) rungs.push_back({rm, rn});
  json metrics = {{"convergence",
                   {{"ladder", rungs},
                    {"max_relative_change", study.changes},
                    {"tail_tolerance", study.tail_tolerance},
                    {"converged", study.converged},
                    {"profile_truncation", {m, n}}}}};
  return {std::move(profile), std::move(metrics), std::nullopt};
}

Artifacts run_compare(const RunConfig& config, const RunRequest& request, unsigned threads) {
  const CompareConfig options = config.compare.value_or(CompareConfig{});
  const auto trace_path = request.trace ? request.trace : options.trace_csv;
  if (!trace_path) throw ConfigError("compare.trace_csv", "a trace CSV is required (or --trace)");

  analysis::ExperimentalTrace trace;
  try {
    trace = analysis::parse_trace_csv(read_file(*trace_path));
  } catch (const DomainError& e) {
    throw IoError("trace '" + *trace_path + "': " + e.what());
  }
  trace.shift = options.trace_shift_m;
  trace.background = options.background;

  auto profile = compute(config, analysis_kind(config), config.truncation_params(), threads);
  const auto result = analysis::compare_to_experiment(
      profile, trace,
      analysis::CompareOptions{options.fit_scale, options.fit_shift, options.shift_min_m,
                               options.shift_max_m, options.shift_step_m});
  json residuals = json::array();
  for (Eigen::Index i = 0; i < result.s.size(); ++i) {
    residuals.push_back({result.s(i), result.residuals(i)});
  }
  json metrics = {{"comparison",
                   {{"trace", *trace_path},
                    {"scale", result.scale},
                    {"shift_m", result.shift},
                    {"sse", result.sse},
                    {"points", result.s.size()},
                    {"residuals", residuals}}}};
  if (options.fit_lambda_t) {
    if (!config.geometry.a2_m) {
      throw ConfigError("compare.fit_lambda_t", "needs a double-slit geometry");
    }
    const auto components =
        two_slit_components(config.detector_scan(), config.slit_geometry(), config.beam_params(),
                            *config.coherence_params(), config.truncation_params(), threads);
    const auto fit = analysis::fit_coherence_degree(components, trace);
    metrics["comparison"]["lambda_t_fit"] = {{"lambda_t", fit.lambda_t},
                                             {"scale", fit.scale},
                                             {"sse", fit.sse},
                                             {"clamped", fit.clamped},
                                             {"points", fit.points}};
  }
  return {std::move(profile), std::move(metrics), std::move(trace)};
}

int fail(std::ostream& err, ExitCode code, const std::string& category, const std::string& tag,
         const std::string& message, const std::string& field = {}) {
  json error = {{"exit_code", static_cast<int>(code)},
                {"category", category},
                {"code", tag},
                {"message", message}};
  if (!field.empty()) error["field"] = field;
  err << json{{"error", error}}.dump() << '\n';
  return code;
}

}  // namespace

int run(const RunRequest& request, std::ostream& out, std::ostream& err) {
  static const char* const kSubcommands[] = {"single", "double", "visibility", "converge", "compare"};
  if (std::find(std::begin(kSubcommands), std::end(kSubcommands), request.subcommand) ==
      std::end(kSubcommands)) {
    return fail(err, kExitConfigError, "config", "unknown_subcommand",
                "unknown subcommand '" + request.subcommand + "'");
  }

  RunConfig config;
  try {
    config = parse_config(read_file(request.config_path));
  } catch (const IoError& e) {
    return fail(err, kExitIoError, "io", "io_error", e.what());
  } catch (const ConfigError& e) {
    return fail(err, kExitConfigError, "config", "config_error", e.what(), e.field());
  }

  const std::string& sub = request.subcommand;
  const std::string csv_path =
      request.csv.value_or(config.outputs.csv.value_or(sub + "_profile.csv"));
  const std::string report_path =
      request.report.value_or(config.outputs.report.value_or(sub + "_report.json"));
  const std::optional<std::string> svg_path = request.svg ? request.svg : config.outputs.svg;

  try {
    Artifacts artifacts = [&] {
      if (sub == "single") return run_single(config, request.threads);
      if (sub == "double") return run_double(config, request.threads);
      if (sub == "visibility") return run_visibility(config, request, request.threads);
      if (sub == "converge") return run_converge(config, request.threads);
      return run_compare(config, request, request.threads);
    }();

    const ProfileKind kind =
        artifacts.profile.meta() ? artifacts.profile.meta()->kind : config.default_kind();
    json report = {{"subcommand", sub},
                   {"config", to_json(config)},
                   {"derived", derived_json(config, kind)},
                   {"profile",
                    {{"csv", csv_path},
                     {"samples", artifacts.profile.size()},
                     {"kind", std::string(to_string(kind))}}}};
    report["profile"]["computed"] = artifacts.profile.meta().has_value();
    report.update(artifacts.metrics);

    std::vector<std::pair<std::filesystem::path, std::string>> files;
    files.emplace_back(csv_path, format_profile_csv(artifacts.profile));
    if (svg_path) {
      report["profile"]["svg"] = *svg_path;
      files.emplace_back(*svg_path, render_svg(artifacts.profile,
                                               artifacts.trace ? &*artifacts.trace : nullptr));
    }
    files.emplace_back(report_path, report.dump(2) + "\n");
    write_files_atomically(files);

    out << sub << ": wrote " << csv_path << " and " << report_path;
    if (svg_path) out << " and " << *svg_path;
    out << '\n';
    return kExitSuccess;
  } catch (const ConfigError& e) {
    return fail(err, kExitConfigError, "config", "config_error", e.what(), e.field());
  } catch (const IoError& e) {
    return fail(err, kExitIoError, "io", "io_error", e.what());
  } catch (const ComputationError& e) {
    return fail(err, kExitComputationError, "computation", e.code(), e.what());
  } catch (const DomainError& e) {
    return fail(err, kExitComputationError, "computation", "domain_error", e.what());
  } catch (const std::exception& e) {
    return fail(err, kExitComputationError, "computation", "internal_error", e.what());
  }
}

}  // namespace nslit::io
