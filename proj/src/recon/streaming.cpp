#include "ocm/streaming.hpp"

#include "ocm/error.hpp"

namespace ocm {

StreamingReconstructor::StreamingReconstructor(CoincidenceOptions opt, int accidental_offset, bool keep_pairs)
    : opt_(opt), k_(accidental_offset), keep_pairs_(keep_pairs) {
  if (k_ < 1) fail(ErrorCode::InvalidArgument, "accidental frame offset must be >= 1");
}

void StreamingReconstructor::begin(const DetectorConfig& cfg, std::uint64_t, std::uint64_t n_frames) {
  cfg_ = cfg;
  n_frames_ = n_frames;
  pairs_ = CentroidHistogram(cfg);
  cross_ = CentroidHistogram(cfg);
  singles_ = singles_image({}, cfg);
  kept_.clear();
  recent_.clear();
  have_current_ = false;
  n_events_ = n_pairs_ = rejected_ = multi_ = 0;
}

void StreamingReconstructor::consume(std::span<const PhotonEvent> events) {
  for (const auto& e : events) {
    if (have_current_) {
      if (e.frame_id < current_.id || (e.frame_id == current_.id && e.t_bin < current_.events.back().t_bin))
        fail(ErrorCode::UnsortedInput, "events must arrive sorted by (frame_id, t_bin)");
      if (e.frame_id != current_.id) finish_frame();
    }
    if (!have_current_) {
      current_.id = e.frame_id;
      current_.events.clear();
      have_current_ = true;
    }
    current_.events.push_back(e);
    singles_(e.ix, e.iy) += 1.0;
    ++n_events_;
  }
}

void StreamingReconstructor::finish_frame() {
  scratch_.clear();
  const std::uint64_t n = pair_frame(current_.events, opt_, scratch_, rejected_);
  if (n > 1) ++multi_;
  if (!(opt_.strict_one_pair && n > 1)) {
    for (const auto& p : scratch_) pairs_.at(p.cx(), p.cy()) += 1.0;
    n_pairs_ += scratch_.size();
    if (keep_pairs_) kept_.insert(kept_.end(), scratch_.begin(), scratch_.end());
  }
  while (!recent_.empty() && recent_.front().id + static_cast<std::uint64_t>(k_) < current_.id) recent_.pop_front();
  for (const auto& f : recent_)
    if (f.id + static_cast<std::uint64_t>(k_) == current_.id)
      cross_pair_frames(f.events, current_.events, opt_,
                        [&](const PhotonEvent& a, const PhotonEvent& b) { cross_.at(a.ix + b.ix, a.iy + b.iy) += 1.0; });
  recent_.push_back(std::move(current_));
  current_ = Frame{};
  have_current_ = false;
}

void StreamingReconstructor::end() {
  if (have_current_) finish_frame();
}

AccidentalEstimate StreamingReconstructor::accidentals() const {
  AccidentalEstimate est;
  est.scale = accidental_scale(n_frames_, k_);
  est.n_frames = n_frames_;
  est.offset = k_;
  est.raw = cross_;
  est.scaled = cross_;
  for (auto& v : est.scaled.counts) v *= est.scale;
  return est;
}

CentroidImage StreamingReconstructor::image(CentroidMode mode, bool subtract_accidentals) const {
  if (subtract_accidentals) {
    const auto acc = accidentals();
    return centroid_image(pairs_, &acc, mode, cfg_, opt_.min_xi);
  }
  return centroid_image(pairs_, nullptr, mode, cfg_, opt_.min_xi);
}

}  // namespace ocm
