#include <doctest.h>

#include <filesystem>
#include <functional>
#include <fstream>
#include <set>
#include <sstream>

#include "ocm/commands.hpp"
#include "ocm/config.hpp"
#include "ocm/error.hpp"
#include "ocm/grid_io.hpp"

using namespace ocm;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("ocm_unit_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("defaults build every domain object") {
    const auto c = RunConfig::defaults();
    CHECK(c.imaging_system().wavelength == 810e-9);
    CHECK(c.detector().n_time_bins() == 220);
    CHECK(c.coincidence_options().window_bins == 4);
    CHECK(c.phase_matching().poling_period == doctest::Approx(3.43366e-6).epsilon(1e-5));
    CHECK(c.source().kind == SourceKind::OcmPairs);
    CHECK(c.centroid_mode() == CentroidMode::AverageOverXi);
    CHECK(c.is_auto("phase_matching.poling_period_m"));
  }

  TEST_CASE("nested JSON maps onto dotted keys") {
    const auto c = RunConfig::from_json_text(R"({"system": {"wavelength_m": 405e-9}, "ocm": {"n_sweep": [1, 3, 5]},
                                                 "phase_matching": {"sellmeier": {"temperature_C": 40}}})");
    CHECK(c.number("system.wavelength_m") == 405e-9);
    CHECK(c.integers("ocm.n_sweep") == std::vector<std::int64_t>{1, 3, 5});
    CHECK(c.sellmeier().temperature_c == 40.0);
  }

  TEST_CASE("parse errors carry line and column") {
    try {
      RunConfig::from_json_text("{\n  \"system\": {\n    \"wavelength_m\": ,\n  }\n}");
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConfigError);
      CHECK(std::string(e.what()).find("3:") != std::string::npos);
    }
  }

  TEST_CASE("unknown keys and wrong types are rejected with their path") {
    try {
      RunConfig::from_json_text(R"({"system": {"wavelenght_m": 1e-6}})");
      FAIL("expected unknown key");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("system.wavelenght_m") != std::string::npos);
    }
    try {
      RunConfig::from_json_text(R"({"detector": {"n_pixels_x": 3.5}})");
      FAIL("expected type error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("detector.n_pixels_x") != std::string::npos);
    }
    CHECK(code_of([] { RunConfig::from_json_text("[1, 2]"); }) == ErrorCode::ConfigError);
    CHECK(code_of([] { RunConfig::from_json_text(R"({"acquisition": {"seed": -1}})"); }) == ErrorCode::ConfigError);
    CHECK(code_of([] { RunConfig::from_json_text(R"({"reconstruction": {"mode": "median"}}).centroid_mode(); }) ==
          ErrorCode::ConfigError);
    CHECK(code_of([] { RunConfig::from_json_text(R"({"detector": {"pde": 2}})").detector(); }) == ErrorCode::ConfigError);
  }

  TEST_CASE("overrides parse JSON values and fall back to strings") {
    auto c = RunConfig::defaults();
    c.apply_override("system.wavelength_m=405e-9");
    c.apply_override("reconstruction.mode=sum");
    c.apply_override("acquisition.seed=18446744073709551615");
    c.apply_override("ocm.n_sweep=[2,4]");
    CHECK(c.number("system.wavelength_m") == 405e-9);
    CHECK(c.centroid_mode() == CentroidMode::SumOverXi);
    CHECK(c.u64("acquisition.seed") == 18446744073709551615ull);
    CHECK(c.integers("ocm.n_sweep").size() == 2);
    CHECK(code_of([&] { c.apply_override("nope=1"); }) == ErrorCode::ConfigError);
    CHECK(code_of([&] { c.apply_override("system.wavelength_m"); }) == ErrorCode::ConfigError);
    c.apply_override("phase_matching.poling_period_m=3.4e-6");
    CHECK(c.phase_matching().poling_period == 3.4e-6);
  }

  TEST_CASE("help text lists every key with its unit") {
    const auto help = config_help_text();
    std::set<std::string> paths;
    for (const auto& k : config_registry()) {
      CHECK(help.find(k.path + " [" + k.unit + "]") != std::string::npos);
      paths.insert(k.path);
    }
    CHECK(paths.size() == config_registry().size());
    for (const auto& k : config_registry()) CHECK_NOTHROW(RunConfig::defaults().set(k.path, k.default_json));
  }

  TEST_CASE("sellmeier file relative to the config directory") {
    const auto d = scratch("sellmeier");
    std::ofstream(d / "s.json") << R"({"coefficients": {"A": 2.2, "B": 1.18431, "C": 5.14852e-2, "D": 0.6603, "E": 100.00507,
      "F": 9.68956e-3, "thermal_linear": [0, 0, 0, 0], "thermal_quadratic": [0, 0, 0, 0]}})";
    std::ofstream(d / "run.json") << R"({"phase_matching": {"sellmeier": {"file": "s.json"}}})";
    const auto c = RunConfig::from_file((d / "run.json").string());
    CHECK(c.sellmeier().A == 2.2);
    CHECK(c.sellmeier().thermal_linear[0] == 0.0);
    std::ofstream(d / "missing.json") << R"({"phase_matching": {"sellmeier": {"file": "nope.json"}}})";
    CHECK(code_of([&] { RunConfig::from_file((d / "missing.json").string()).sellmeier(); }) == ErrorCode::ConfigError);
  }

  TEST_CASE("dump is canonical") {
    auto a = RunConfig::defaults();
    auto b = RunConfig::from_json_text("{}");
    CHECK(a.dump() == b.dump());
    b.apply_override("detector.pde=0.5");
    CHECK(a.dump() != b.dump());
  }

  TEST_CASE("psf command on a small grid") {
    auto c = RunConfig::defaults();
    c.apply_override("grid.psf_n=129");
    c.apply_override("ocm.n_sweep=[1,2,4]");
    const auto d = scratch("psf");
    const auto rep = cmd_psf(c, d.string());
    CHECK(rep.number("comparison", "ocm_to_half_wavelength_fwhm_ratio") == doctest::Approx(1.0).epsilon(0.05));
    CHECK(rep.find("scaling", "ocm_scaling") == "heisenberg");
    for (const char* f : {"psf_classical.ocmg", "psf_classical_half_wavelength.ocmg", "psf_ocm_N2.ocmg",
                          "psf_classical_centroid_N2.ocmg", "psf_ocm_N2_projection.csv", "psf_report.txt"})
      CHECK(fs::exists(d / f));
    CHECK(load_grid((d / "psf_ocm_N2.ocmg").string()).nx() == 129);
  }

  TEST_CASE("simulate, reconstruct and analyze chain") {
    auto c = RunConfig::defaults();
    c.apply_override("acquisition.wall_time_s=0.02");
    c.apply_override("detector.pde=1");
    c.apply_override("grid.image_n=128");
    c.apply_override("grid.image_spacing_m=11e-6");
    const auto d = scratch("chain");
    const auto sim = cmd_simulate(c, d.string());
    CHECK(sim.find("acquisition", "n_frames") == "16000");
    const auto rec = cmd_reconstruct(c, (d / "events.ocme").string(), d.string());
    CHECK(rec.number("reconstruction", "pairs") > 100);
    CHECK(rec.find("reconstruction", "image_nx") == "63");
    const auto img = load_grid((d / "centroid.ocmg").string());
    CHECK(img.nx() == 63);
    const auto ana = cmd_analyze(c, {(d / "centroid.ocmg").string()}, d.string());
    CHECK(ana.find("centroid", "resolved").has_value());
    CHECK(fs::exists(d / "profile_centroid.csv"));
    CHECK(slurp(d / "profile_centroid.csv").rfind("x_m,value,sigma", 0) == 0);
    CHECK(code_of([&] { cmd_reconstruct(c, (d / "absent.ocme").string(), d.string()); }) == ErrorCode::FormatError);
  }
}
