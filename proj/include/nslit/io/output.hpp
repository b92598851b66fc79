#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nslit/analysis/experiment.hpp"
#include "nslit/diffraction.hpp"

namespace nslit::io {

/// Filesystem failure (unreadable input, unwritable output).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal string that round-trips to `value`.
std::string format_double(double value);

/// `s_m,intensity` header, one LF-terminated row per sample.
std::string format_profile_csv(const IntensityProfile& profile);
IntensityProfile parse_profile_csv(std::string_view text);

/// Line plot of the profile (s in micrometres) with the optional trace as a
/// scatter overlay. Deterministic for fixed inputs.
std::string render_svg(const IntensityProfile& profile,
                       const analysis::ExperimentalTrace* trace = nullptr);

std::string read_file(const std::filesystem::path& path);

/// Writes every (path, content) pair or none of them: contents go to
/// temporaries beside their targets and are renamed into place at the end.
/// Throws IoError after removing whatever was written.
void write_files_atomically(const std::vector<std::pair<std::filesystem::path, std::string>>& files);

}  // namespace nslit::io
