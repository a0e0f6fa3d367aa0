#include "ocm/acquisition.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "ocm/error.hpp"

namespace ocm {
namespace {

struct ChunkOutput {
  std::vector<PhotonEvent> events;
  DetectionCounts counts;
  std::uint64_t tuples = 0;
};

void simulate_chunk(const PreparedSource& src, const DetectorConfig& cfg, double mean_tuples, std::uint64_t first_frame,
                    std::uint64_t n_frames, std::uint64_t chunk_seed, ChunkOutput& out) {
  Rng rng(chunk_seed);
  DetectorModel model(cfg);
  std::poisson_distribution<int> n_tuples(mean_tuples > 0.0 ? mean_tuples : 1.0);
  std::vector<PhotonTuple> tuples;
  out.events.clear();
  out.counts = {};
  out.tuples = 0;
  for (std::uint64_t f = first_frame; f < first_frame + n_frames; ++f) {
    tuples.clear();
    const int k = mean_tuples > 0.0 ? n_tuples(rng) : 0;
    for (int i = 0; i < k; ++i) tuples.push_back(src.draw(rng));
    out.tuples += static_cast<std::uint64_t>(k);
    model.frame(f, tuples, rng, out.events, out.counts);
  }
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::uint64_t frames_for_wall_time(double wall_time, const DetectorConfig& cfg) {
  if (!(wall_time > 0)) fail(ErrorCode::InvalidArgument, "wall_time must be positive");
  return static_cast<std::uint64_t>(std::llround(wall_time * cfg.frame_rate));
}

AcquisitionResult run_acquisition(const PreparedSource& src, const DetectorConfig& cfg, double wall_time,
                                  std::uint64_t seed, EventSink& sink, Exec exec) {
  return run_acquisition_frames(src, cfg, frames_for_wall_time(wall_time, cfg), seed, sink, exec);
}

AcquisitionResult run_acquisition_frames(const PreparedSource& src, const DetectorConfig& cfg, std::uint64_t n_frames,
                                         std::uint64_t seed, EventSink& sink, Exec exec) {
  cfg.validate();
  AcquisitionResult r;
  r.seed = seed;
  r.n_frames = n_frames;
  r.duty_cycle = cfg.duty_cycle();
  r.mean_tuples_per_frame = src.spec().pair_rate * cfg.frame_duration;
  r.config_hash = detector_config_hash(cfg);
  r.source_hash = src.hash();

  sink.begin(cfg, r.source_hash, n_frames);
  const std::uint64_t n_chunks = (n_frames + kFramesPerChunk - 1) / kFramesPerChunk;
  const int workers = exec == Exec::Parallel ? std::max(1, omp_get_max_threads()) : 1;
  // A wave holds a few chunks per worker so memory stays bounded on long runs.
  const std::uint64_t wave = static_cast<std::uint64_t>(workers) * 4;
  std::vector<ChunkOutput> outputs(static_cast<std::size_t>(std::min<std::uint64_t>(wave, std::max<std::uint64_t>(n_chunks, 1))));

  for (std::uint64_t first = 0; first < n_chunks; first += wave) {
    const std::uint64_t count = std::min(wave, n_chunks - first);
    const auto scount = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::Parallel)
    for (long long c = 0; c < scount; ++c) {
      const std::uint64_t chunk = first + static_cast<std::uint64_t>(c);
      const std::uint64_t f0 = chunk * kFramesPerChunk;
      const std::uint64_t nf = std::min(kFramesPerChunk, n_frames - f0);
      simulate_chunk(src, cfg, r.mean_tuples_per_frame, f0, nf, derive_seed(seed, chunk), outputs[static_cast<std::size_t>(c)]);
    }
    for (std::uint64_t c = 0; c < count; ++c) {
      auto& o = outputs[static_cast<std::size_t>(c)];
      sink.consume(o.events);
      r.counts += o.counts;
      r.tuples_emitted += o.tuples;
    }
  }
  sink.end();
  return r;
}

Manifest make_manifest(const AcquisitionResult& r, const SourceSpec& src) {
  Manifest m;
  m["seed"] = std::to_string(r.seed);
  m["n_frames"] = std::to_string(r.n_frames);
  m["duty_cycle"] = num(r.duty_cycle);
  m["mean_tuples_per_frame"] = num(r.mean_tuples_per_frame);
  m["config_hash"] = hex64(r.config_hash);
  m["source_hash"] = hex64(r.source_hash);
  m["source_kind"] = to_string(src.kind);
  m["source_pair_rate_hz"] = num(src.pair_rate);
  m["source_wavelength_m"] = num(src.system.wavelength);
  m["tuples_emitted"] = std::to_string(r.tuples_emitted);
  m["photons_arrived"] = std::to_string(r.counts.photons_arrived);
  m["photons_detected"] = std::to_string(r.counts.photons_detected);
  m["dark_hits"] = std::to_string(r.counts.dark_hits);
  m["crosstalk_hits"] = std::to_string(r.counts.crosstalk_hits);
  m["events"] = std::to_string(r.counts.events);
  return m;
}

}  // namespace ocm
