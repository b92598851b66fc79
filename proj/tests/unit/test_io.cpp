#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "nslit/io/config.hpp"
#include "nslit/io/output.hpp"
#include "nslit/io/run.hpp"

using namespace nslit;
using namespace nslit::io;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kSource = NSLIT_SOURCE_DIR;

// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("nslit_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string& file) const { return (dir / file).string(); }
  std::string write(const std::string& file, const std::string& text) const {
    std::ofstream(dir / file, std::ios::binary) << text;
    return path(file);
  }
};

const char* kSmallDouble = R"({
  "beam": {"mass_kg": 1.67e-27, "energy_J": 3.3e-23, "amplitude": 6.8e-2},
  "geometry": {"a1_m": 21.9e-6, "a2_m": 22.5e-6, "d_m": 100e-6, "c_m": 3.0e-5},
  "scan": {"l_m": 5.0, "samples": 201},
  "coherence": {"c1": 0.397, "c2": 0.918, "lambda_t": 0.59},
  "truncation": {"m_max": 100, "n_max": 4, "ladder": [[50, 2], [100, 4]]}
})";

std::string expect_config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  FAIL("expected a ConfigError");
  return {};
}

RunRequest request(const std::string& sub, const std::string& config,
                   std::optional<std::string> csv = std::nullopt) {
  RunRequest r;
  r.subcommand = sub;
  r.config_path = config;
  r.csv = std::move(csv);
  return r;
}

int shell(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("reference configuration parses") {
  const auto config = parse_config(read_file(kSource + "/configs/double_decoherent.json"));
  CHECK(config.default_kind() == ProfileKind::decoherent);
  const auto c = config.coherence_params();
  REQUIRE(c.has_value());
  CHECK(c->c1() * c->c1() + c->c2() * c->c2() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c->lambda_t() == 0.59);
  CHECK(config.slit_geometry() == fixtures::reference_double());
  CHECK(config.detector_scan() == fixtures::reference_scan());
  CHECK(config.truncation_params() == Truncation{600, 10, 0.01});
  CHECK(config.beam_params().wavenumber() == fixtures::neutron().wavenumber());
  CHECK(config.ladder() == analysis::TruncationLadder{{600, 10}, {1200, 15}});

  const auto coherent = parse_config(read_file(kSource + "/configs/double_coherent.json"));
  CHECK(coherent.default_kind() == ProfileKind::coherent);
  CHECK(coherent.ladder().size() == 4);
}

TEST_CASE("missing second slit selects single mode") {
  const auto config = parse_config(read_file(kSource + "/configs/single.json"));
  CHECK(config.default_kind() == ProfileKind::single);
  CHECK_FALSE(config.slit_geometry().is_double());
  CHECK(config.slit_geometry().b() == kDefaultSlitLength);
}

TEST_CASE("invalid configurations name the offending field") {
  auto doc = json::parse(kSmallDouble);
  auto with = [&](const std::string& section, const std::string& key, json value) {
    auto copy = doc;
    copy[section][key] = std::move(value);
    return copy.dump();
  };
  CHECK(expect_config_error(with("scan", "samples", 1)) == "scan.samples");
  CHECK(expect_config_error(with("scan", "samples", "many")) == "scan.samples");
  CHECK(expect_config_error(with("geometry", "a1_m", -1.0)) == "geometry.a1_m");
  CHECK(expect_config_error(with("geometry", "width", 1.0)) == "geometry.width");
  CHECK(expect_config_error(with("beam", "wavelength_m", 2e-9)) == "beam.energy_J");
  CHECK(expect_config_error(with("coherence", "lambda_t", 1.5)) == "coherence.lambda_t");

  auto no_d = doc;
  no_d["geometry"].erase("d_m");
  CHECK(expect_config_error(no_d.dump()) == "geometry.d_m");
  auto extra = doc;
  extra["colour"] = "blue";
  CHECK(expect_config_error(extra.dump()) == "colour");

  CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
}

TEST_CASE("configuration round-trips through JSON") {
  for (const auto& name : {"double_decoherent", "double_coherent", "single"}) {
    const auto config = parse_config(read_file(kSource + "/configs/" + name + ".json"));
    CHECK(parse_config_json(to_json(config)) == config);
  }
  auto doc = json::parse(kSmallDouble);
  doc["compare"] = {{"trace_csv", "t.csv"}, {"fit_shift", true}, {"fit_lambda_t", true}};
  doc["outputs"] = {{"svg", "plot.svg"}};
  const auto config = parse_config(doc.dump());
  CHECK(config.compare->fit_lambda_t);
  CHECK(parse_config_json(to_json(config)) == config);
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.0, 1.0, -5e-4, 0.1 + 0.2, 6.02214076e23, 1e-300, 3.0 / 7.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("profile csv layout") {
  const auto scan = fixtures::reference_scan();
  const auto profile = intensity_single(scan, SlitGeometry::single(90e-6, 3e-5),
                                        fixtures::neutron(2.45e4), {50, 2, 0.01});
  const std::string csv = format_profile_csv(profile);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "s_m,intensity");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 801);
  CHECK(csv.back() == '\n');

  const auto parsed = parse_profile_csv(csv);
  CHECK((parsed.s() == scan.grid()).all());
  CHECK((parsed.intensity() == profile.intensity()).all());
  CHECK_THROWS_AS(parse_profile_csv("s_m,counts\n0,1\n"), DomainError);
}

TEST_CASE("svg output") {
  const auto profile = intensity_single(fixtures::reference_scan(51), SlitGeometry::single(90e-6, 3e-5),
                                        fixtures::neutron(2.45e4), {50, 2, 0.01});
  const std::string plain = render_svg(profile);
  CHECK(plain.rfind("<svg", 0) == 0);
  CHECK(plain.find("id=\"model\"") != std::string::npos);
  CHECK(plain.find("id=\"trace\"") == std::string::npos);
  CHECK(render_svg(profile) == plain);

  const analysis::ExperimentalTrace trace{profile.s(), profile.intensity()};
  const std::string overlay = render_svg(profile, &trace);
  CHECK(overlay.find("id=\"trace\"") != std::string::npos);
  CHECK(overlay.find("<circle") != std::string::npos);
}

TEST_CASE("atomic writes leave nothing behind on failure") {
  Scratch scratch("atomic");
  write_files_atomically({{scratch.path("a.txt"), "one"}, {scratch.path("b.txt"), "two"}});
  CHECK(read_file(scratch.path("b.txt")) == "two");
  CHECK_THROWS_AS(write_files_atomically({{scratch.path("c.txt"), "three"},
                                          {scratch.path("missing/d.txt"), "four"}}),
                  IoError);
  CHECK_FALSE(fs::exists(scratch.path("c.txt")));
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(scratch.dir)) ++entries;
  CHECK(entries == 2);
  CHECK_THROWS_AS(read_file(scratch.path("nope.txt")), IoError);
}

TEST_CASE("run writes profile and report") {
  Scratch scratch("run_double");
  const auto config = scratch.write("config.json", kSmallDouble);
  std::ostringstream out, err;
  RunRequest request{"double", config, scratch.path("p.csv"), scratch.path("p.svg"),
                     scratch.path("r.json"), std::nullopt, std::nullopt, 1};
  REQUIRE(run(request, out, err) == kExitSuccess);
  CHECK(err.str().empty());

  const auto report = json::parse(read_file(scratch.path("r.json")));
  CHECK(report["subcommand"] == "double");
  CHECK(report["derived"]["kind"] == "decoherent");
  CHECK(report["visibility"]["visibility"].get<double>() > 0.0);
  CHECK(fs::exists(scratch.path("p.svg")));

  const auto parsed = parse_profile_csv(read_file(scratch.path("p.csv")));
  const auto cfg = parse_config(kSmallDouble);
  const auto direct = intensity_decoherent(cfg.detector_scan(), cfg.slit_geometry(),
                                           cfg.beam_params(), *cfg.coherence_params(),
                                           cfg.truncation_params());
  CHECK((parsed.intensity() == direct.intensity()).all());
}

TEST_CASE("run output is byte-identical across runs and thread counts") {
  Scratch scratch("run_determinism");
  const auto config = scratch.write("config.json", kSmallDouble);
  std::string first;
  for (unsigned threads : {1u, 1u, 2u, 5u}) {
    std::ostringstream out, err;
    RunRequest request{"double", config, scratch.path("p.csv"), std::nullopt,
                       scratch.path("r.json"), std::nullopt, std::nullopt, threads};
    REQUIRE(run(request, out, err) == kExitSuccess);
    const auto csv = read_file(scratch.path("p.csv"));
    if (first.empty()) first = csv;
    CHECK(csv == first);
  }
}

TEST_CASE("run subcommands") {
  Scratch scratch("run_subcommands");
  const auto config = scratch.write("config.json", kSmallDouble);
  auto go = [&](const std::string& sub, std::optional<std::string> trace = std::nullopt,
                std::optional<std::string> profile = std::nullopt) {
    std::ostringstream out, err;
    RunRequest request{sub, config, scratch.path(sub + ".csv"), std::nullopt,
                       scratch.path(sub + ".json"), trace, profile, 1};
    const int code = run(request, out, err);
    return std::make_pair(code, err.str());
  };

  CHECK(go("single").first == kExitSuccess);
  CHECK(go("visibility").first == kExitSuccess);
  const auto vis = json::parse(read_file(scratch.path("visibility.json")));
  CHECK(vis["visibility"]["visibility"].get<double>() > 0.0);

  REQUIRE(go("converge").first == kExitSuccess);
  const auto conv = json::parse(read_file(scratch.path("converge.json")));
  CHECK(conv["convergence"]["max_relative_change"].size() == 1);

  // Synthetic trace: the model itself with an offset background.
  const auto model = parse_profile_csv(read_file(scratch.path("single.csv")));
  const auto dbl = parse_profile_csv(read_file(scratch.path("visibility.csv")));
  analysis::ExperimentalTrace trace{dbl.s(), 4.0 * dbl.intensity()};
  const auto trace_path = scratch.write("trace.csv", analysis::format_trace_csv(trace));
  REQUIRE(go("compare", trace_path).first == kExitSuccess);
  const auto cmp = json::parse(read_file(scratch.path("compare.json")));
  CHECK(cmp["comparison"]["scale"].get<double>() == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(model.size() == dbl.size());
}

TEST_CASE("run failures map to exit codes and write nothing") {
  Scratch scratch("run_failures");
  const auto config = scratch.write("config.json", kSmallDouble);
  auto go = [&](const RunRequest& req) {
    std::ostringstream out, err;
    const int code = run(req, out, err);
    json error;
    if (code != kExitSuccess) error = json::parse(err.str())["error"];
    return std::make_pair(code, error);
  };

  auto [missing, e1] = go(request("double", scratch.path("none.json")));
  CHECK(missing == kExitIoError);
  CHECK(e1["category"] == "io");

  const auto bad = scratch.write("bad.json", R"({"beam": {"mass_kg": 1}})");
  auto [config_code, e2] = go(request("double", bad));
  CHECK(config_code == kExitConfigError);
  CHECK(e2.contains("field"));

  const auto flat = scratch.write("flat.csv", "s_m,intensity\n0,1\n1,1\n2,1\n3,1\n4,1\n5,1\n");
  RunRequest vis = request("visibility", config, scratch.path("v.csv"));
  vis.report = scratch.path("v.json");
  vis.profile = flat;
  auto [fringe_code, e3] = go(vis);
  CHECK(fringe_code == kExitComputationError);
  CHECK(e3["code"] == "no_fringe");
  CHECK_FALSE(fs::exists(scratch.path("v.csv")));
  CHECK_FALSE(fs::exists(scratch.path("v.json")));

  auto [no_trace, e4] = go(request("compare", config, scratch.path("c.csv")));
  CHECK(no_trace == kExitConfigError);
  CHECK(e4["field"] == "compare.trace_csv");

  auto [unknown, e5] = go(request("triple", config));
  CHECK(unknown == kExitConfigError);
}

TEST_CASE("golden decoherent profile") {
  const auto golden = parse_profile_csv(read_file(kSource + "/tests/data/golden_decoherent.csv"));
  const auto config = parse_config(read_file(kSource + "/configs/double_decoherent.json"));
  const auto profile = intensity_decoherent(config.detector_scan(), config.slit_geometry(),
                                            config.beam_params(), *config.coherence_params(),
                                            config.truncation_params());
  REQUIRE(profile.size() == golden.size());
  const double peak = golden.intensity().maxCoeff();
  for (Eigen::Index i = 0; i < profile.size(); ++i) {
    CHECK(profile.s()(i) == golden.s()(i));
    CHECK(std::abs(profile.intensity()(i) - golden.intensity()(i)) <=
          1e-9 * std::max(golden.intensity()(i), 1e-6 * peak));
  }
}

TEST_CASE("command line tool") {
  Scratch scratch("cli");
  const std::string cli = NSLIT_CLI_PATH;
  const std::string quiet = " >/dev/null 2>&1";
  CHECK(shell(cli + quiet) == 2);
  CHECK(shell(cli + " double" + quiet) == 2);
  CHECK(shell(cli + " double -c " + scratch.path("absent.json") + quiet) == 4);

  const std::string csv = scratch.path("golden.csv");
  REQUIRE(shell(cli + " double -c " + kSource + "/configs/double_decoherent.json --csv " + csv +
                " --report " + scratch.path("r.json") + " -j 2" + quiet) == 0);
  const auto produced = parse_profile_csv(read_file(csv));
  const auto golden = parse_profile_csv(read_file(kSource + "/tests/data/golden_decoherent.csv"));
  REQUIRE(produced.size() == golden.size());
  const double peak = golden.intensity().maxCoeff();
  for (Eigen::Index i = 0; i < produced.size(); ++i) {
    CHECK(std::abs(produced.intensity()(i) - golden.intensity()(i)) <=
          1e-9 * std::max(golden.intensity()(i), 1e-6 * peak));
  }
}
