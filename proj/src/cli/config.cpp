#include "ocm/config.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ocm/error.hpp"
#include "ocm/grid_io.hpp"
#include "ocm/special.hpp"

namespace ocm {

using json = nlohmann::json;

namespace {

using VT = ValueType;

const std::vector<ConfigKey> kRegistry = {
    {"system.pupil_radius_m", VT::Number, "m", "1.38e-3", "imaging lens pupil radius"},
    {"system.object_distance_m", VT::Number, "m", "0.355", "object distance s_o"},
    {"system.wavelength_m", VT::Number, "m", "810e-9", "wavelength per photon"},
    {"system.magnification", VT::Number, "1", "2.4", "lateral magnification"},
    {"system.pupil_profile", VT::String, "-", "\"hard\"", "pupil transmission: hard | gaussian"},
    {"system.gaussian_pupil_std_m", VT::Number, "m", "0.69e-3", "std of a Gaussian pupil transmission"},

    {"aperture.shape", VT::String, "-", "\"slits\"", "point | slits | rectangle | gaussian_spot | mask"},
    {"aperture.count", VT::Integer, "1", "3", "number of slits"},
    {"aperture.line_width_m", VT::Number, "m", "70e-6", "slit line width"},
    {"aperture.pitch_m", VT::Number, "m", "110e-6", "slit centre-to-centre pitch"},
    {"aperture.length_m", VT::Number, "m", "350e-6", "slit length along y"},
    {"aperture.width_m", VT::Number, "m", "200e-6", "rectangle width"},
    {"aperture.height_m", VT::Number, "m", "300e-6", "rectangle height"},
    {"aperture.waist_m", VT::Number, "m", "25e-6", "Gaussian spot waist radius"},
    {"aperture.center_x_m", VT::Number, "m", "0", "aperture centre x"},
    {"aperture.center_y_m", VT::Number, "m", "0", "aperture centre y"},
    {"aperture.pump_waist_m", VT::Number, "m", "0", "Gaussian pump envelope waist, 0 for uniform illumination"},
    {"aperture.mask_file", VT::String, "path", "\"\"", "OCMG amplitude mask used when shape = mask"},

    {"ocm.n_photons", VT::Integer, "1", "2", "photon number N of the centroid measurement"},
    {"ocm.n_sweep", VT::IntegerList, "1", "[1, 2, 3, 4]", "photon numbers for the PSF scaling fit"},

    {"phase_matching.crystal_length_m", VT::Number, "m", "5e-3", "nonlinear crystal length L"},
    {"phase_matching.signal_wavelength_m", VT::Number, "m", "810e-9", "signal wavelength"},
    {"phase_matching.idler_wavelength_m", VT::Number, "m", "810e-9", "idler wavelength"},
    {"phase_matching.focal_length_m", VT::Number, "m", "0.05", "state-preparation lens focal length f"},
    {"phase_matching.poling_period_m", VT::NumberOrAuto, "m", "\"auto\"", "poling period, or auto to solve for collinear phase matching"},
    {"phase_matching.sellmeier.file", VT::String, "path", "\"\"", "JSON coefficient file, takes precedence over inline coefficients; empty for the built-in KTP z-axis model"},
    {"phase_matching.sellmeier.A", VT::Number, "1", "2.12725", "Sellmeier A"},
    {"phase_matching.sellmeier.B", VT::Number, "1", "1.18431", "Sellmeier B"},
    {"phase_matching.sellmeier.C", VT::Number, "um^2", "5.14852e-2", "Sellmeier C"},
    {"phase_matching.sellmeier.D", VT::Number, "1", "0.6603", "Sellmeier D"},
    {"phase_matching.sellmeier.E", VT::Number, "um^2", "100.00507", "Sellmeier E"},
    {"phase_matching.sellmeier.F", VT::Number, "um^-2", "9.68956e-3", "Sellmeier F"},
    {"phase_matching.sellmeier.thermal_linear", VT::NumberList, "1/K", "[9.9587e-6, 9.9228e-6, -8.9603e-6, 4.1010e-6]",
     "linear thermo-optic polynomial in 1/lambda[um]"},
    {"phase_matching.sellmeier.thermal_quadratic", VT::NumberList, "1/K^2", "[-1.1882e-8, 10.459e-8, -9.8136e-8, 3.1481e-8]",
     "quadratic thermo-optic polynomial in 1/lambda[um]"},
    {"phase_matching.sellmeier.reference_temperature_C", VT::Number, "degC", "25", "temperature of the base fit"},
    {"phase_matching.sellmeier.temperature_C", VT::Number, "degC", "25", "crystal temperature"},

    {"detector.n_pixels_x", VT::Integer, "px", "32", "sensor columns"},
    {"detector.n_pixels_y", VT::Integer, "px", "32", "sensor rows"},
    {"detector.pixel_pitch_m", VT::Number, "m", "43.75e-6", "pixel pitch"},
    {"detector.active_width_m", VT::Number, "m", "1.4e-3", "sensitive region width"},
    {"detector.active_height_m", VT::Number, "m", "1.4e-3", "sensitive region height"},
    {"detector.time_bin_s", VT::Number, "s", "205e-12", "TDC time bin"},
    {"detector.frame_duration_s", VT::Number, "s", "45e-9", "frame (exposure) duration"},
    {"detector.frame_rate_hz", VT::Number, "Hz", "800e3", "frame rate"},
    {"detector.pde", VT::Number, "1", "0.008", "photon detection efficiency"},
    {"detector.dark_count_rate_hz", VT::Number, "Hz", "1e3", "dark count rate per pixel"},
    {"detector.dark_rate_map_hz", VT::NumberList, "Hz", "[]", "optional per-pixel dark rates, row-major"},
    {"detector.crosstalk_prob", VT::Number, "1", "0.01", "probability a detection fires each 4-neighbour"},

    {"acquisition.source", VT::String, "-",
     "\"ocm_pairs\"", "ocm_pairs | coherent_classical | incoherent_classical | point_source | far_field_ocm"},
    {"acquisition.wall_time_s", VT::Number, "s", "1.0", "acquisition wall time"},
    {"acquisition.seed", VT::UInt64, "1", "20240611", "master random seed"},
    {"acquisition.pair_rate_hz", VT::Number, "Hz", "2.2e7", "mean tuples per second at the detector plane"},
    {"acquisition.point_waist_m", VT::Number, "m", "25e-6", "waist of the point_source spot"},
    {"acquisition.far_field_focal_length_m", VT::Number, "m", "0.4", "far-field lens focal length"},
    {"acquisition.correlation_width_m", VT::Number, "m", "43.75e-6", "std of the in-pair position difference in the far field"},

    {"grid.image_n", VT::Integer, "samples", "512", "image-plane density grid size per axis"},
    {"grid.image_spacing_m", VT::Number, "m", "5.5e-6", "image-plane density grid spacing"},
    {"grid.xi_n", VT::Integer, "samples", "256", "phase-matching xi grid size per axis"},
    {"grid.xi_spacing_m", VT::Number, "m", "12e-6", "phase-matching xi grid spacing (object plane)"},
    {"grid.psf_n", VT::Integer, "samples", "513", "PSF grid size per axis"},
    {"grid.psf_spacing_fraction", VT::Number, "1", "0.25", "PSF spacing as a fraction of the first-zero radius (or Gaussian std)"},
    {"grid.far_field_object_n", VT::Integer, "samples", "256", "object grid size for the far-field transform"},
    {"grid.far_field_object_spacing_m", VT::Number, "m", "4e-6", "object grid spacing for the far-field transform"},

    {"reconstruction.window_s", VT::Number, "s", "1e-9", "coincidence window"},
    {"reconstruction.min_xi_px", VT::Integer, "px", "1", "Chebyshev pixel distance a pair must exceed"},
    {"reconstruction.mode", VT::String, "-", "\"average\"", "sum | average over xi"},
    {"reconstruction.accidental_offset", VT::Integer, "frames", "1", "frame offset k for accidental pairing"},
    {"reconstruction.subtract_accidentals", VT::Bool, "-", "true", "subtract the cross-frame accidental estimate"},
    {"reconstruction.strict_one_pair", VT::Bool, "-", "false", "drop frames with more than one admissible pair"},

    {"analysis.axis", VT::String, "-", "\"x\"", "profile axis: x | y"},
    {"analysis.band_half_width_m", VT::Number, "m", "400e-6", "half width of the projection band (image plane)"},
    {"analysis.model", VT::String, "-", "\"somb2\"", "width model: none | somb2 | gaussian"},
    {"analysis.contrast_threshold", VT::Number, "1", "0.1", "slit contrast needed to call slits resolved"},

    {"io.output_dir", VT::String, "path", "\"out\"", "directory for all outputs"},
};

const ConfigKey* find_key(const std::string& path) {
  for (const auto& k : kRegistry)
    if (k.path == path) return &k;
  return nullptr;
}

[[noreturn]] void config_error(const std::string& msg) { fail(ErrorCode::ConfigError, msg); }

const char* type_name(VT t) {
  switch (t) {
    case VT::Number: return "number";
    case VT::Integer: return "integer";
    case VT::UInt64: return "unsigned integer";
    case VT::Bool: return "boolean";
    case VT::String: return "string";
    case VT::NumberList: return "list of numbers";
    case VT::IntegerList: return "list of integers";
    case VT::NumberOrAuto: return "number or \"auto\"";
  }
  return "value";
}

ConfigValue convert(const ConfigKey& key, const json& v) {
  auto bad = [&]() -> ConfigValue { config_error("'" + key.path + "': expected " + type_name(key.type)); };
  switch (key.type) {
    case VT::Number:
      if (!v.is_number()) return bad();
      if (!std::isfinite(v.get<double>())) return bad();
      return v.get<double>();
    case VT::Integer:
      if (!v.is_number_integer()) return bad();
      return v.get<std::int64_t>();
    case VT::UInt64:
      if (v.is_number_unsigned()) return v.get<std::uint64_t>();
      if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
      return bad();
    case VT::Bool:
      if (!v.is_boolean()) return bad();
      return v.get<bool>();
    case VT::String:
      if (!v.is_string()) return bad();
      return v.get<std::string>();
    case VT::NumberList: {
      if (!v.is_array()) return bad();
      std::vector<double> out;
      for (const auto& e : v) {
        if (!e.is_number()) return bad();
        out.push_back(e.get<double>());
      }
      return out;
    }
    case VT::IntegerList: {
      if (!v.is_array()) return bad();
      std::vector<std::int64_t> out;
      for (const auto& e : v) {
        if (!e.is_number_integer()) return bad();
        out.push_back(e.get<std::int64_t>());
      }
      return out;
    }
    case VT::NumberOrAuto:
      if (v.is_string() && v.get<std::string>() == "auto") return std::string("auto");
      if (v.is_number()) return v.get<double>();
      return bad();
  }
  return bad();
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, const json*>>& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      if (!find_key(path)) {
        flatten(*it, path, out);
        continue;
      }
    }
    out.emplace_back(path, &*it);
  }
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<ConfigKey>& config_registry() { return kRegistry; }

std::string config_help_text() {
  std::ostringstream os;
  os << "Config keys (JSON, SI units):\n";
  for (const auto& k : kRegistry) {
    os << "  " << k.path << " [" << k.unit << "] (" << type_name(k.type) << ", default " << k.default_json << ")  "
       << k.description << "\n";
  }
  return os.str();
}

RunConfig RunConfig::defaults() {
  RunConfig c;
  for (const auto& k : kRegistry) c.values_[k.path] = convert(k, json::parse(k.default_json));
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) config_error("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  auto dir = std::filesystem::path(path).parent_path().string();
  if (dir.empty()) dir = ".";
  try {
    return from_json_text(ss.str(), dir);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) config_error(path + ": " + std::string(e.what()).substr(13));
    throw;
  }
}

RunConfig RunConfig::from_json_text(const std::string& text, const std::string& base_dir) {
  RunConfig c = defaults();
  c.base_dir_ = base_dir;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error("parse error at " + line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  if (!j.is_object()) config_error("top level must be a JSON object");
  std::vector<std::pair<std::string, const json*>> leaves;
  flatten(j, "", leaves);
  for (const auto& [path, v] : leaves) {
    const auto* key = find_key(path);
    if (!key) config_error("unknown key '" + path + "'");
    c.values_[path] = convert(*key, *v);
  }
  return c;
}

void RunConfig::set(const std::string& key, const std::string& json_value) {
  const auto* k = find_key(key);
  if (!k) config_error("unknown key '" + key + "'");
  json v;
  try {
    v = json::parse(json_value);
  } catch (const json::parse_error&) {
    v = json_value;
  }
  values_[key] = convert(*k, v);
}

void RunConfig::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) config_error("override must look like KEY=VALUE, got '" + assignment + "'");
  set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

const ConfigValue& RunConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) config_error("unknown key '" + key + "'");
  return it->second;
}

double RunConfig::number(const std::string& key) const {
  const auto& v = get(key);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  config_error("'" + key + "' is not a number");
}

std::int64_t RunConfig::integer(const std::string& key) const {
  const auto& v = get(key);
  if (const auto* d = std::get_if<std::int64_t>(&v)) return *d;
  config_error("'" + key + "' is not an integer");
}

std::uint64_t RunConfig::u64(const std::string& key) const {
  const auto& v = get(key);
  if (const auto* d = std::get_if<std::uint64_t>(&v)) return *d;
  config_error("'" + key + "' is not an unsigned integer");
}

bool RunConfig::flag(const std::string& key) const {
  const auto& v = get(key);
  if (const auto* d = std::get_if<bool>(&v)) return *d;
  config_error("'" + key + "' is not a boolean");
}

const std::string& RunConfig::string(const std::string& key) const {
  const auto& v = get(key);
  if (const auto* d = std::get_if<std::string>(&v)) return *d;
  config_error("'" + key + "' is not a string");
}

std::vector<double> RunConfig::numbers(const std::string& key) const {
  const auto& v = get(key);
  if (const auto* d = std::get_if<std::vector<double>>(&v)) return *d;
  config_error("'" + key + "' is not a list of numbers");
}

std::vector<std::int64_t> RunConfig::integers(const std::string& key) const {
  const auto& v = get(key);
  if (const auto* d = std::get_if<std::vector<std::int64_t>>(&v)) return *d;
  config_error("'" + key + "' is not a list of integers");
}

bool RunConfig::is_auto(const std::string& key) const {
  const auto* s = std::get_if<std::string>(&get(key));
  return s && *s == "auto";
}

std::string RunConfig::dump() const {
  std::ostringstream os;
  for (const auto& k : kRegistry) {
    os << k.path << ": ";
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            os << format_number(v);
          } else if constexpr (std::is_same_v<T, bool>) {
            os << (v ? "true" : "false");
          } else if constexpr (std::is_same_v<T, std::string>) {
            os << v;
          } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            os << '[';
            for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << format_number(v[i]);
            os << ']';
          } else if constexpr (std::is_same_v<T, std::vector<std::int64_t>>) {
            os << '[';
            for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
            os << ']';
          } else {
            os << v;
          }
        },
        values_.at(k.path));
    os << '\n';
  }
  return os.str();
}

std::string RunConfig::resolve_path(const std::string& p) const {
  if (p.empty()) return p;
  const std::filesystem::path fp(p);
  if (fp.is_absolute()) return p;
  return (std::filesystem::path(base_dir_) / fp).string();
}

ImagingSystem RunConfig::imaging_system() const {
  ImagingSystem s;
  s.pupil_radius = number("system.pupil_radius_m");
  s.object_distance = number("system.object_distance_m");
  s.wavelength = number("system.wavelength_m");
  s.magnification = number("system.magnification");
  const auto& prof = string("system.pupil_profile");
  if (prof == "hard") {
    s.pupil = HardCircularPupil{};
  } else if (prof == "gaussian") {
    s.pupil = GaussianPupil{number("system.gaussian_pupil_std_m")};
  } else {
    config_error("'system.pupil_profile': expected hard or gaussian, got '" + prof + "'");
  }
  try {
    s.validate();
  } catch (const Error& e) {
    config_error(std::string("system: ") + e.what());
  }
  return s;
}

Aperture RunConfig::aperture() const {
  const auto& shape = string("aperture.shape");
  Aperture a;
  try {
    if (shape == "point") {
      a = Aperture(PointShape{});
    } else if (shape == "slits") {
      a = Aperture(SlitShape{static_cast<int>(integer("aperture.count")), number("aperture.line_width_m"),
                             number("aperture.pitch_m"), number("aperture.length_m")});
    } else if (shape == "rectangle") {
      a = Aperture(RectangleShape{number("aperture.width_m"), number("aperture.height_m")});
    } else if (shape == "gaussian_spot") {
      a = Aperture(GaussianSpotShape{number("aperture.waist_m")});
    } else if (shape == "mask") {
      const auto path = resolve_path(string("aperture.mask_file"));
      if (path.empty()) config_error("'aperture.mask_file' is required when aperture.shape = mask");
      a = Aperture(MaskShape{load_grid(path)});
    } else {
      config_error("'aperture.shape': unknown shape '" + shape + "'");
    }
    a = Aperture(a.shape(), number("aperture.center_x_m"), number("aperture.center_y_m"));
    const double pw = number("aperture.pump_waist_m");
    if (pw < 0) config_error("'aperture.pump_waist_m' must be >= 0");
    if (pw > 0) a = a.with_pump_waist(pw);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    config_error(std::string("aperture: ") + e.what());
  }
  return a;
}

SellmeierModel RunConfig::sellmeier() const {
  SellmeierModel m;
  m.A = number("phase_matching.sellmeier.A");
  m.B = number("phase_matching.sellmeier.B");
  m.C = number("phase_matching.sellmeier.C");
  m.D = number("phase_matching.sellmeier.D");
  m.E = number("phase_matching.sellmeier.E");
  m.F = number("phase_matching.sellmeier.F");
  auto fill = [&](const std::string& key, std::array<double, 4>& dst) {
    const auto v = numbers(key);
    if (v.size() != 4) config_error("'" + key + "': expected 4 coefficients");
    std::copy(v.begin(), v.end(), dst.begin());
  };
  fill("phase_matching.sellmeier.thermal_linear", m.thermal_linear);
  fill("phase_matching.sellmeier.thermal_quadratic", m.thermal_quadratic);
  m.reference_temperature_c = number("phase_matching.sellmeier.reference_temperature_C");
  m.temperature_c = number("phase_matching.sellmeier.temperature_C");

  const auto path = resolve_path(string("phase_matching.sellmeier.file"));
  if (!path.empty()) {
    std::ifstream is(path);
    if (!is) config_error("'phase_matching.sellmeier.file': cannot open '" + path + "'");
    json j;
    try {
      j = json::parse(is);
    } catch (const json::parse_error& e) {
      config_error("'phase_matching.sellmeier.file': " + std::string(e.what()));
    }
    const auto& c = j.at("coefficients");
    auto num = [&](const char* k) {
      if (!c.contains(k) || !c[k].is_number()) config_error(std::string("Sellmeier file: missing coefficient ") + k);
      return c[k].get<double>();
    };
    m.A = num("A");
    m.B = num("B");
    m.C = num("C");
    m.D = num("D");
    m.E = num("E");
    m.F = num("F");
    auto arr = [&](const char* k, std::array<double, 4>& dst) {
      if (!c.contains(k) || !c[k].is_array() || c[k].size() != 4) config_error(std::string("Sellmeier file: bad ") + k);
      for (std::size_t i = 0; i < 4; ++i) dst[i] = c[k][i].get<double>();
    };
    arr("thermal_linear", m.thermal_linear);
    arr("thermal_quadratic", m.thermal_quadratic);
    if (c.contains("reference_temperature_C")) m.reference_temperature_c = c["reference_temperature_C"].get<double>();
  }
  return m;
}

PhaseMatchingParams RunConfig::phase_matching() const {
  PhaseMatchingParams p;
  p.crystal_length = number("phase_matching.crystal_length_m");
  p.focal_length = number("phase_matching.focal_length_m");
  const double ls = number("phase_matching.signal_wavelength_m");
  const double li = number("phase_matching.idler_wavelength_m");
  if (!(ls > 0) || !(li > 0)) config_error("phase_matching: wavelengths must be positive");
  p.omega_s = kTwoPi * kSpeedOfLight / ls;
  p.omega_i = kTwoPi * kSpeedOfLight / li;
  p.index_model = sellmeier();
  try {
    p.poling_period = is_auto("phase_matching.poling_period_m") ? solve_poling_period(p)
                                                                 : number("phase_matching.poling_period_m");
    p.validate();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    config_error(std::string("phase_matching: ") + e.what());
  }
  return p;
}

DetectorConfig RunConfig::detector() const {
  DetectorConfig d;
  d.n_pixels_x = static_cast<int>(integer("detector.n_pixels_x"));
  d.n_pixels_y = static_cast<int>(integer("detector.n_pixels_y"));
  d.pixel_pitch = number("detector.pixel_pitch_m");
  d.active_width = number("detector.active_width_m");
  d.active_height = number("detector.active_height_m");
  d.time_bin = number("detector.time_bin_s");
  d.frame_duration = number("detector.frame_duration_s");
  d.frame_rate = number("detector.frame_rate_hz");
  d.pde = number("detector.pde");
  d.dark_count_rate = number("detector.dark_count_rate_hz");
  d.dark_rate_map = numbers("detector.dark_rate_map_hz");
  d.crosstalk_prob = number("detector.crosstalk_prob");
  try {
    d.validate();
  } catch (const Error& e) {
    config_error(std::string("detector: ") + e.what());
  }
  return d;
}

SourceSpec RunConfig::source() const {
  SourceSpec s;
  try {
    s.kind = source_kind_from_string(string("acquisition.source"));
  } catch (const Error& e) {
    config_error(std::string("'acquisition.source': ") + e.what());
  }
  s.aperture = aperture();
  s.system = imaging_system();
  s.n_photons = static_cast<int>(integer("ocm.n_photons"));
  s.pair_rate = number("acquisition.pair_rate_hz");
  s.point_waist = number("acquisition.point_waist_m");
  s.far_field_focal_length = number("acquisition.far_field_focal_length_m");
  s.correlation_width = number("acquisition.correlation_width_m");
  auto grid = [&](const char* n, const char* d) {
    const auto count = integer(n);
    if (count < 2) config_error(std::string("'") + n + "' must be >= 2");
    return GridSpec::centered(static_cast<std::size_t>(count), number(d));
  };
  s.density_grid = grid("grid.image_n", "grid.image_spacing_m");
  s.xi_grid = grid("grid.xi_n", "grid.xi_spacing_m");
  s.object_grid = grid("grid.far_field_object_n", "grid.far_field_object_spacing_m");
  if (s.kind == SourceKind::OcmPairs || s.kind == SourceKind::PointSource) s.phase_matching = phase_matching();
  try {
    s.validate();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    config_error(std::string("source: ") + e.what());
  }
  return s;
}

CoincidenceOptions RunConfig::coincidence_options() const {
  CoincidenceOptions o;
  const DetectorConfig d = detector();
  o.window_bins = d.coincidence_window_bins(number("reconstruction.window_s"));
  o.min_xi = static_cast<int>(integer("reconstruction.min_xi_px"));
  if (o.min_xi < 0) config_error("'reconstruction.min_xi_px' must be >= 0");
  o.strict_one_pair = flag("reconstruction.strict_one_pair");
  return o;
}

CentroidMode RunConfig::centroid_mode() const {
  const auto& m = string("reconstruction.mode");
  if (m == "sum") return CentroidMode::SumOverXi;
  if (m == "average") return CentroidMode::AverageOverXi;
  config_error("'reconstruction.mode': expected sum or average, got '" + m + "'");
}

}  // namespace ocm
