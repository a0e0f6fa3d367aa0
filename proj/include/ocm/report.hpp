#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ocm/analysis.hpp"

namespace ocm {

// Sectioned "key: value" text report. Numbers use a fixed format so reruns are byte-identical.
class Report {
 public:
  void section(const std::string& name);
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, double value);
  void add(const std::string& key, std::int64_t value);
  void add(const std::string& key, std::uint64_t value);
  void add(const std::string& key, int value) { add(key, static_cast<std::int64_t>(value)); }
  void add(const std::string& key, bool value);

  std::optional<std::string> find(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key) const;

  std::string text() const;
  void save(const std::string& path) const;

 private:
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
  };
  std::vector<Section> sections_;
};

std::string format_number(double v);

// x (metres) and value columns, plus sigma when present.
void save_profile_csv(const std::string& path, const Profile1D& p);

}  // namespace ocm
