#include "ocm/event_io.hpp"

#include <sstream>

#include "ocm/binary_io.hpp"
#include "ocm/error.hpp"

namespace ocm {
namespace {

void write_config(std::ostream& os, const DetectorConfig& c) {
  le::put<std::uint16_t>(os, static_cast<std::uint16_t>(c.n_pixels_x));
  le::put<std::uint16_t>(os, static_cast<std::uint16_t>(c.n_pixels_y));
  for (double v : {c.pixel_pitch, c.active_width, c.active_height, c.time_bin, c.frame_duration, c.frame_rate, c.pde,
                   c.dark_count_rate, c.crosstalk_prob})
    le::put<double>(os, v);
  le::put<std::uint32_t>(os, static_cast<std::uint32_t>(c.dark_rate_map.size()));
  for (double v : c.dark_rate_map) le::put<double>(os, v);
}

DetectorConfig read_config(std::istream& is) {
  DetectorConfig c;
  c.n_pixels_x = le::get<std::uint16_t>(is);
  c.n_pixels_y = le::get<std::uint16_t>(is);
  for (double* v : {&c.pixel_pitch, &c.active_width, &c.active_height, &c.time_bin, &c.frame_duration, &c.frame_rate,
                    &c.pde, &c.dark_count_rate, &c.crosstalk_prob})
    *v = le::get<double>(is);
  const auto n = le::get<std::uint32_t>(is);
  if (n != 0 && n != static_cast<std::uint32_t>(c.n_pixels_x * c.n_pixels_y))
    fail(ErrorCode::FormatError, "dark rate map size does not match the sensor");
  c.dark_rate_map.resize(n);
  for (auto& v : c.dark_rate_map) v = le::get<double>(is);
  c.validate();
  return c;
}

}  // namespace

void write_event_header(std::ostream& os, const DetectorConfig& cfg, std::uint64_t source_hash) {
  os.write("OCME", 4);
  le::put<std::uint16_t>(os, kEventFormatVersion);
  write_config(os, cfg);
  le::put<std::uint64_t>(os, source_hash);
}

void write_event_records(std::ostream& os, std::span<const PhotonEvent> events) {
  for (const auto& e : events) {
    le::put<std::uint64_t>(os, e.frame_id);
    le::put<std::uint16_t>(os, e.ix);
    le::put<std::uint16_t>(os, e.iy);
    le::put<std::uint16_t>(os, e.t_bin);
  }
}

std::uint64_t detector_config_hash(const DetectorConfig& cfg) {
  std::ostringstream os;
  write_config(os, cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

EventFileWriter::EventFileWriter(std::string path) : path_(std::move(path)) {}

void EventFileWriter::begin(const DetectorConfig& cfg, std::uint64_t source_hash, std::uint64_t) {
  os_.open(path_, std::ios::binary | std::ios::trunc);
  if (!os_) fail(ErrorCode::SinkWriteError, "cannot open event file " + path_);
  write_event_header(os_, cfg, source_hash);
}

void EventFileWriter::consume(std::span<const PhotonEvent> events) {
  write_event_records(os_, events);
  if (!os_) fail(ErrorCode::SinkWriteError, "write failed: " + path_);
}

void EventFileWriter::end() {
  os_.flush();
  if (!os_) fail(ErrorCode::SinkWriteError, "flush failed: " + path_);
  os_.close();
}

void EventCollector::begin(const DetectorConfig& cfg, std::uint64_t hash, std::uint64_t frames) {
  config = cfg;
  source_hash = hash;
  n_frames = frames;
  events.clear();
}

void EventCollector::consume(std::span<const PhotonEvent> ev) { events.insert(events.end(), ev.begin(), ev.end()); }

EventFile read_events(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::string(magic, 4) != "OCME") fail(ErrorCode::FormatError, "missing OCME magic");
  const auto version = le::get<std::uint16_t>(is);
  if (version != kEventFormatVersion) fail(ErrorCode::FormatError, "unsupported OCME version " + std::to_string(version));
  EventFile f;
  f.config = read_config(is);
  f.source_hash = le::get<std::uint64_t>(is);
  while (is.peek() != std::char_traits<char>::eof()) {
    PhotonEvent e;
    e.frame_id = le::get<std::uint64_t>(is);
    e.ix = le::get<std::uint16_t>(is);
    e.iy = le::get<std::uint16_t>(is);
    e.t_bin = le::get<std::uint16_t>(is);
    f.events.push_back(e);
  }
  return f;
}

EventFile load_events(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::FormatError, "cannot open event file " + path);
  return read_events(is);
}

void save_manifest(const std::string& path, const Manifest& m) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) fail(ErrorCode::SinkWriteError, "cannot open manifest " + path);
  for (const auto& [k, v] : m) os << k << ": " << v << '\n';
  if (!os) fail(ErrorCode::SinkWriteError, "write failed: " + path);
}

Manifest load_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::FormatError, "cannot open manifest " + path);
  Manifest m;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto c = line.find(": ");
    if (c == std::string::npos) fail(ErrorCode::FormatError, "bad manifest line: " + line);
    m[line.substr(0, c)] = line.substr(c + 2);
  }
  return m;
}

std::string manifest_path_for(const std::string& event_path) { return event_path + ".manifest"; }

}  // namespace ocm
