#pragma once

#include <cstdint>

#include "ocm/detector.hpp"
#include "ocm/detector_model.hpp"
#include "ocm/event_io.hpp"
#include "ocm/parallel.hpp"
#include "ocm/source.hpp"

namespace ocm {

inline constexpr std::uint64_t kFramesPerChunk = 16384;

struct AcquisitionResult {
  std::uint64_t seed = 0;
  std::uint64_t n_frames = 0;
  std::uint64_t tuples_emitted = 0;
  DetectionCounts counts;
  double duty_cycle = 0.0;
  double mean_tuples_per_frame = 0.0;
  std::uint64_t config_hash = 0;
  std::uint64_t source_hash = 0;
};

std::uint64_t frames_for_wall_time(double wall_time, const DetectorConfig& cfg);

// Frames are simulated in fixed chunks with seeds derived from (seed, chunk index) and delivered
// to the sink in frame order, so output does not depend on thread count or exec policy.
AcquisitionResult run_acquisition(const PreparedSource& src, const DetectorConfig& cfg, double wall_time,
                                  std::uint64_t seed, EventSink& sink, Exec exec = Exec::Parallel);

AcquisitionResult run_acquisition_frames(const PreparedSource& src, const DetectorConfig& cfg, std::uint64_t n_frames,
                                         std::uint64_t seed, EventSink& sink, Exec exec = Exec::Parallel);

Manifest make_manifest(const AcquisitionResult& r, const SourceSpec& src);

}  // namespace ocm
