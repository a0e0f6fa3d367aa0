#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "ocm/aperture.hpp"
#include "ocm/centroid_image.hpp"
#include "ocm/coincidence.hpp"
#include "ocm/detector.hpp"
#include "ocm/imaging_system.hpp"
#include "ocm/phase_matching.hpp"
#include "ocm/source.hpp"

namespace ocm {

enum class ValueType { Number, Integer, UInt64, Bool, String, NumberList, IntegerList, NumberOrAuto };

struct ConfigKey {
  std::string path;  // dotted, e.g. "system.wavelength_m"
  ValueType type;
  std::string unit;
  std::string default_json;
  std::string description;
};

const std::vector<ConfigKey>& config_registry();

// One line per key with unit and default, for --help.
std::string config_help_text();

using ConfigValue = std::variant<double, std::int64_t, std::uint64_t, bool, std::string, std::vector<double>,
                                 std::vector<std::int64_t>>;

// Every registered key with a typed value; file values override defaults, --set overrides both.
class RunConfig {
 public:
  static RunConfig defaults();
  // Throws ConfigError with line:column for malformed JSON and the dotted path for bad fields.
  static RunConfig from_file(const std::string& path);
  static RunConfig from_json_text(const std::string& text, const std::string& base_dir = ".");

  // KEY=VALUE; VALUE is parsed as JSON, falling back to a plain string.
  void apply_override(const std::string& assignment);
  void set(const std::string& key, const std::string& json_value);

  double number(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::uint64_t u64(const std::string& key) const;
  bool flag(const std::string& key) const;
  const std::string& string(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<std::int64_t> integers(const std::string& key) const;
  // NumberOrAuto keys: true when set to "auto".
  bool is_auto(const std::string& key) const;

  const std::string& base_dir() const { return base_dir_; }
  // Canonical "key: value" dump in registry order.
  std::string dump() const;

  ImagingSystem imaging_system() const;
  Aperture aperture() const;
  SellmeierModel sellmeier() const;
  PhaseMatchingParams phase_matching() const;
  DetectorConfig detector() const;
  SourceSpec source() const;
  CoincidenceOptions coincidence_options() const;
  CentroidMode centroid_mode() const;

 private:
  const ConfigValue& get(const std::string& key) const;
  std::string resolve_path(const std::string& p) const;

  std::map<std::string, ConfigValue> values_;
  std::string base_dir_ = ".";
};

}  // namespace ocm
