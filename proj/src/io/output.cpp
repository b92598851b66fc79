#include "nslit/io/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace nslit::io {

namespace fs = std::filesystem;

std::string format_double(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string format_profile_csv(const IntensityProfile& profile) {
  std::string out = "s_m,intensity\n";
  out.reserve(out.size() + static_cast<std::size_t>(profile.size()) * 48);
  for (Eigen::Index i = 0; i < profile.size(); ++i) {
    out += format_double(profile.s()(i));
    out += ',';
    out += format_double(profile.intensity()(i));
    out += '\n';
  }
  return out;
}

IntensityProfile parse_profile_csv(std::string_view text) {
  auto [s, intensity] = analysis::parse_two_column_csv(text, "s_m,intensity");
  return IntensityProfile(std::move(s), std::move(intensity));
}

namespace {

std::string fixed(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  return buffer;
}

std::string tick_label(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.4g", v);
  return buffer;
}

}  // namespace

std::string render_svg(const IntensityProfile& profile, const analysis::ExperimentalTrace* trace) {
  constexpr double width = 800.0;
  constexpr double height = 500.0;
  constexpr double left = 80.0;
  constexpr double right = 20.0;
  constexpr double top = 20.0;
  constexpr double bottom = 50.0;

  const double um = 1e6;
  double x_lo = profile.s()(0) * um;
  double x_hi = profile.s()(profile.size() - 1) * um;
  double y_hi = profile.intensity().maxCoeff();
  const bool overlay = trace != nullptr && trace->s.size() > 0;
  if (overlay) {
    x_lo = std::min(x_lo, trace->s.minCoeff() * um);
    x_hi = std::max(x_hi, trace->s.maxCoeff() * um);
    y_hi = std::max(y_hi, (trace->counts - trace->background).maxCoeff());
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (!(y_hi > 0.0)) y_hi = 1.0;

  const auto px = [&](double x_um) { return left + (x_um - x_lo) / (x_hi - x_lo) * (width - left - right); };
  const auto py = [&](double y) { return height - bottom - y / y_hi * (height - top - bottom); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width) << "\" height=\""
      << fixed(height) << "\" viewBox=\"0 0 " << fixed(width) << ' ' << fixed(height) << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << fixed(width) << "\" height=\"" << fixed(height)
      << "\" fill=\"white\"/>\n";
  svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  svg << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(height - bottom) << "\" x2=\""
      << fixed(width - right) << "\" y2=\"" << fixed(height - bottom) << "\"/>\n";
  svg << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top) << "\" x2=\"" << fixed(left)
      << "\" y2=\"" << fixed(height - bottom) << "\"/>\n";
  svg << "</g>\n";

  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x_lo + (x_hi - x_lo) * t / 4.0;
    const double yv = y_hi * t / 4.0;
    svg << "<text x=\"" << fixed(px(xv)) << "\" y=\"" << fixed(height - bottom + 16)
        << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
    svg << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(py(yv) + 4)
        << "\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
  }
  svg << "<text x=\"" << fixed((left + width - right) / 2) << "\" y=\"" << fixed(height - 10)
      << "\" text-anchor=\"middle\">s [um]</text>\n";
  svg << "</g>\n";

  svg << "<polyline id=\"model\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
  for (Eigen::Index i = 0; i < profile.size(); ++i) {
    if (i) svg << ' ';
    svg << fixed(px(profile.s()(i) * um)) << ',' << fixed(py(profile.intensity()(i)));
  }
  svg << "\"/>\n";

  if (overlay) {
    svg << "<g id=\"trace\" fill=\"none\" stroke=\"#b02020\">\n";
    for (Eigen::Index i = 0; i < trace->s.size(); ++i) {
      svg << "<circle cx=\"" << fixed(px(trace->s(i) * um)) << "\" cy=\""
          << fixed(py(trace->counts(i) - trace->background)) << "\" r=\"2.5\"/>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return buffer.str();
}

void write_files_atomically(const std::vector<std::pair<fs::path, std::string>>& files) {
  std::vector<fs::path> temporaries;
  std::vector<fs::path> placed;
  const auto cleanup = [&] {
    std::error_code ignored;
    for (const auto& p : temporaries) fs::remove(p, ignored);
    for (const auto& p : placed) fs::remove(p, ignored);
  };

  for (const auto& [target, content] : files) {
    fs::path tmp = target;
    tmp += ".tmp";
    temporaries.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      cleanup();
      throw IoError("cannot write '" + target.string() + "'");
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::error_code ec;
    fs::rename(temporaries[i], files[i].first, ec);
    if (ec) {
      cleanup();
      throw IoError("cannot move output into '" + files[i].first.string() + "': " + ec.message());
    }
    placed.push_back(files[i].first);
  }
}

}  // namespace nslit::io
