#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace nslit::io {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitConfigError = 2,
  kExitComputationError = 3,
  kExitIoError = 4,
};

/// One CLI invocation. Output paths given here override the config's
/// `outputs` section.
struct RunRequest {
  /// single | double | visibility | converge | compare
  std::string subcommand;
  std::string config_path;
  std::optional<std::string> csv;
  std::optional<std::string> svg;
  std::optional<std::string> report;
  /// compare: trace CSV (overrides compare.trace_csv).
  std::optional<std::string> trace;
  /// visibility: analyse this `s_m,intensity` CSV instead of computing one.
  std::optional<std::string> profile;
  unsigned threads = 0;
};

/// Executes the request. On success writes the profile CSV, the JSON report
/// (and the SVG when requested), prints a one-line summary to `out` and
/// returns 0. On failure writes nothing, prints a JSON error object to `err`
/// and returns the matching ExitCode.
int run(const RunRequest& request, std::ostream& out, std::ostream& err);

}  // namespace nslit::io
