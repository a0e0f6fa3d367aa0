#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ocm/detector.hpp"
#include "ocm/sampling.hpp"
#include "ocm/source.hpp"

namespace ocm {

struct FrameTuples {
  std::uint64_t frame_id = 0;
  std::vector<PhotonTuple> tuples;
};

struct DetectionCounts {
  std::uint64_t photons_arrived = 0;
  std::uint64_t photons_detected = 0;  // survived pde and landed on the sensor
  std::uint64_t dark_hits = 0;
  std::uint64_t crosstalk_hits = 0;
  std::uint64_t events = 0;  // after first-hit merging

  DetectionCounts& operator+=(const DetectionCounts& o);
};

// Per-frame sensor response. Scratch state makes one instance per thread.
class DetectorModel {
 public:
  explicit DetectorModel(const DetectorConfig& cfg);

  // Appends this frame's events, sorted by (t_bin, iy, ix), to out.
  void frame(std::uint64_t frame_id, std::span<const PhotonTuple> tuples, Rng& rng, std::vector<PhotonEvent>& out,
             DetectionCounts& counts);

  const DetectorConfig& config() const { return cfg_; }

 private:
  struct Hit {
    int ix, iy, t;
  };
  void add_with_crosstalk(int ix, int iy, int t, Rng& rng, DetectionCounts& counts);

  DetectorConfig cfg_;
  int n_bins_;
  double mean_darks_;
  std::vector<double> dark_cdf_;
  std::vector<int> first_hit_;  // per pixel, -1 when empty
  std::vector<int> touched_;
  std::vector<Hit> hits_;
};

// Events for every listed frame in frame order; all randomness flows from seed.
std::vector<PhotonEvent> apply_detector_model(const std::vector<FrameTuples>& frames, const DetectorConfig& cfg,
                                              std::uint64_t seed, DetectionCounts* counts = nullptr);

}  // namespace ocm
