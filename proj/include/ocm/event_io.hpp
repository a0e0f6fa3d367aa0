#pragma once

#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ocm/detector.hpp"

namespace ocm {

inline constexpr std::uint16_t kEventFormatVersion = 1;

class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void begin(const DetectorConfig& cfg, std::uint64_t source_hash, std::uint64_t n_frames) = 0;
  // Events arrive in file order.
  virtual void consume(std::span<const PhotonEvent> events) = 0;
  virtual void end() {}
};

void write_event_header(std::ostream& os, const DetectorConfig& cfg, std::uint64_t source_hash);
void write_event_records(std::ostream& os, std::span<const PhotonEvent> events);

class EventFileWriter : public EventSink {
 public:
  explicit EventFileWriter(std::string path);
  void begin(const DetectorConfig& cfg, std::uint64_t source_hash, std::uint64_t n_frames) override;
  void consume(std::span<const PhotonEvent> events) override;
  void end() override;

 private:
  std::string path_;
  std::ofstream os_;
};

// Keeps every event in memory.
class EventCollector : public EventSink {
 public:
  void begin(const DetectorConfig& cfg, std::uint64_t source_hash, std::uint64_t n_frames) override;
  void consume(std::span<const PhotonEvent> events) override;

  DetectorConfig config;
  std::uint64_t source_hash = 0;
  std::uint64_t n_frames = 0;
  std::vector<PhotonEvent> events;
};

struct EventFile {
  DetectorConfig config;
  std::uint64_t source_hash = 0;
  std::vector<PhotonEvent> events;
};

EventFile read_events(std::istream& is);
EventFile load_events(const std::string& path);

// "key: value" text, one entry per line, keys written in sorted order.
using Manifest = std::map<std::string, std::string>;
void save_manifest(const std::string& path, const Manifest& m);
Manifest load_manifest(const std::string& path);
std::string manifest_path_for(const std::string& event_path);

std::uint64_t detector_config_hash(const DetectorConfig& cfg);

}  // namespace ocm
