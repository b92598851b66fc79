#include <CLI11.hpp>
#include <iostream>

#include "nslit/io/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Neutron single- and double-slit diffraction profiles"};
  app.require_subcommand(1);

  nslit::io::RunRequest request;
  const auto add_common = [&request](CLI::App* sub) {
    sub->add_option("-c,--config", request.config_path, "Run configuration (JSON)")->required();
    sub->add_option("--csv", request.csv, "Profile CSV output path");
    sub->add_option("--report", request.report, "JSON report output path");
    sub->add_option("--svg", request.svg, "SVG plot output path");
    sub->add_option("-j,--threads", request.threads, "Worker threads (0 = all cores)");
  };

  add_common(app.add_subcommand("single", "Single-slit intensity from slit 1"));
  add_common(app.add_subcommand("double", "Two-slit intensity (coherent, or decoherent with lambda_t)"));
  auto* visibility = app.add_subcommand("visibility", "Central fringe visibility");
  add_common(visibility);
  visibility->add_option("--profile", request.profile, "Analyse an existing s_m,intensity CSV");
  add_common(app.add_subcommand("converge", "Truncation convergence study"));
  auto* compare = app.add_subcommand("compare", "Fit the model to a measured trace");
  add_common(compare);
  compare->add_option("--trace", request.trace, "Trace CSV (s_m,counts)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : nslit::io::kExitConfigError;
  }
  request.subcommand = app.get_subcommands().front()->get_name();
  return nslit::io::run(request, std::cout, std::cerr);
}
