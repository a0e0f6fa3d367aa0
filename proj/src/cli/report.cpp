#include "ocm/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ocm/error.hpp"

namespace ocm {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void Report::section(const std::string& name) { sections_.push_back({name, {}}); }

void Report::add(const std::string& key, const std::string& value) {
  if (sections_.empty()) section("general");
  sections_.back().entries.emplace_back(key, value);
}

void Report::add(const std::string& key, double value) { add(key, format_number(value)); }
void Report::add(const std::string& key, std::int64_t value) { add(key, std::to_string(value)); }
void Report::add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }
void Report::add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }

std::optional<std::string> Report::find(const std::string& section, const std::string& key) const {
  for (const auto& s : sections_) {
    if (s.name != section) continue;
    for (const auto& [k, v] : s.entries)
      if (k == key) return v;
  }
  return std::nullopt;
}

double Report::number(const std::string& section, const std::string& key) const {
  const auto v = find(section, key);
  if (!v) fail(ErrorCode::InvalidArgument, "report has no entry " + section + "." + key);
  return std::stod(*v);
}

std::string Report::text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < sections_.size(); ++i) {
    if (i) os << '\n';
    os << '[' << sections_[i].name << "]\n";
    for (const auto& [k, v] : sections_[i].entries) os << k << ": " << v << '\n';
  }
  return os.str();
}

void Report::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  os << text();
  if (!os) fail(ErrorCode::SinkWriteError, "cannot write report '" + path + "'");
}

void save_profile_csv(const std::string& path, const Profile1D& p) {
  std::ofstream os(path, std::ios::binary);
  os << (p.has_sigma() ? "x_m,value,sigma\n" : "x_m,value\n");
  char buf[128];
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.has_sigma())
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.positions[i], p.values[i], p.sigma[i]);
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.positions[i], p.values[i]);
    os << buf;
  }
  if (!os) fail(ErrorCode::SinkWriteError, "cannot write profile '" + path + "'");
}

}  // namespace ocm
