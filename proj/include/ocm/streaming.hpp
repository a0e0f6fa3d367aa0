#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "ocm/centroid_image.hpp"
#include "ocm/coincidence.hpp"
#include "ocm/event_io.hpp"

namespace ocm {

// Event sink that reconstructs on the fly instead of storing events, so long runs stay in
// bounded memory. Produces the same histograms as the batch functions.
class StreamingReconstructor : public EventSink {
 public:
  StreamingReconstructor(CoincidenceOptions opt, int accidental_offset = 1, bool keep_pairs = false);

  void begin(const DetectorConfig& cfg, std::uint64_t source_hash, std::uint64_t n_frames) override;
  void consume(std::span<const PhotonEvent> events) override;
  void end() override;

  const CentroidHistogram& pair_histogram() const { return pairs_; }
  AccidentalEstimate accidentals() const;
  CentroidImage image(CentroidMode mode, bool subtract_accidentals) const;
  const FieldGrid& singles() const { return singles_; }
  const std::vector<CoincidencePair>& pairs() const { return kept_; }
  const DetectorConfig& config() const { return cfg_; }
  std::uint64_t n_frames() const { return n_frames_; }
  std::uint64_t n_events() const { return n_events_; }
  std::uint64_t n_pairs() const { return n_pairs_; }
  std::uint64_t rejected_by_cut() const { return rejected_; }
  std::uint64_t multi_pair_frames() const { return multi_; }

 private:
  struct Frame {
    std::uint64_t id = 0;
    std::vector<PhotonEvent> events;
  };
  void finish_frame();

  CoincidenceOptions opt_;
  int k_;
  bool keep_pairs_;
  DetectorConfig cfg_;
  std::uint64_t n_frames_ = 0;
  CentroidHistogram pairs_;
  CentroidHistogram cross_;
  FieldGrid singles_;
  std::vector<CoincidencePair> kept_;
  std::vector<CoincidencePair> scratch_;
  Frame current_;
  bool have_current_ = false;
  std::deque<Frame> recent_;
  std::uint64_t n_events_ = 0, n_pairs_ = 0, rejected_ = 0, multi_ = 0;
};

}  // namespace ocm
