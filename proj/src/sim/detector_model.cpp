#include "ocm/detector_model.hpp"

#include <algorithm>
#include <cmath>

namespace ocm {

DetectionCounts& DetectionCounts::operator+=(const DetectionCounts& o) {
  photons_arrived += o.photons_arrived;
  photons_detected += o.photons_detected;
  dark_hits += o.dark_hits;
  crosstalk_hits += o.crosstalk_hits;
  events += o.events;
  return *this;
}

DetectorModel::DetectorModel(const DetectorConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  n_bins_ = cfg_.n_time_bins();
  mean_darks_ = cfg_.total_dark_rate() * cfg_.frame_duration;
  dark_cdf_.resize(cfg_.n_pixels());
  double acc = 0.0;
  for (int iy = 0; iy < cfg_.n_pixels_y; ++iy)
    for (int ix = 0; ix < cfg_.n_pixels_x; ++ix) {
      acc += cfg_.dark_rate(ix, iy);
      dark_cdf_[static_cast<std::size_t>(iy * cfg_.n_pixels_x + ix)] = acc;
    }
  first_hit_.assign(cfg_.n_pixels(), -1);
}

void DetectorModel::add_with_crosstalk(int ix, int iy, int t, Rng& rng, DetectionCounts& counts) {
  hits_.push_back({ix, iy, t});
  if (cfg_.crosstalk_prob <= 0.0) return;
  std::bernoulli_distribution xt(cfg_.crosstalk_prob);
  static constexpr int kNeighbours[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (const auto& d : kNeighbours) {
    if (!xt(rng)) continue;
    const int nx = ix + d[0], ny = iy + d[1];
    if (nx < 0 || ny < 0 || nx >= cfg_.n_pixels_x || ny >= cfg_.n_pixels_y) continue;
    hits_.push_back({nx, ny, t});
    ++counts.crosstalk_hits;
  }
}

void DetectorModel::frame(std::uint64_t frame_id, std::span<const PhotonTuple> tuples, Rng& rng,
                          std::vector<PhotonEvent>& out, DetectionCounts& counts) {
  hits_.clear();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution survive(cfg_.pde);
  auto draw_bin = [&] {
    const int b = static_cast<int>(std::floor(unit(rng) * cfg_.frame_duration / cfg_.time_bin));
    return std::min(b, n_bins_ - 1);
  };

  for (const auto& tup : tuples) {
    const int t = draw_bin();
    for (std::size_t k = 0; k < tup.n; ++k) {
      ++counts.photons_arrived;
      if (!survive(rng)) continue;
      const auto px = cfg_.pixel_of(tup.pos[k].x, tup.pos[k].y);
      if (!px) continue;
      ++counts.photons_detected;
      add_with_crosstalk(px->ix, px->iy, t, rng, counts);
    }
  }

  if (mean_darks_ > 0.0) {
    std::poisson_distribution<int> nd(mean_darks_);
    const int n = nd(rng);
    for (int k = 0; k < n; ++k) {
      const double r = unit(rng) * dark_cdf_.back();
      auto it = std::upper_bound(dark_cdf_.begin(), dark_cdf_.end(), r);
      if (it == dark_cdf_.end()) --it;
      const int p = static_cast<int>(it - dark_cdf_.begin());
      ++counts.dark_hits;
      add_with_crosstalk(p % cfg_.n_pixels_x, p / cfg_.n_pixels_x, draw_bin(), rng, counts);
    }
  }

  // First-hit semantics: each pixel keeps its earliest time bin.
  touched_.clear();
  for (const auto& h : hits_) {
    const int p = h.iy * cfg_.n_pixels_x + h.ix;
    int& slot = first_hit_[static_cast<std::size_t>(p)];
    if (slot < 0) {
      slot = h.t;
      touched_.push_back(p);
    } else if (h.t < slot) {
      slot = h.t;
    }
  }
  const std::size_t start = out.size();
  for (int p : touched_) {
    int& slot = first_hit_[static_cast<std::size_t>(p)];
    out.push_back({frame_id, static_cast<std::uint16_t>(p % cfg_.n_pixels_x),
                   static_cast<std::uint16_t>(p / cfg_.n_pixels_x), static_cast<std::uint16_t>(slot)});
    slot = -1;
  }
  std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.end(), event_less);
  counts.events += out.size() - start;
}

std::vector<PhotonEvent> apply_detector_model(const std::vector<FrameTuples>& frames, const DetectorConfig& cfg,
                                              std::uint64_t seed, DetectionCounts* counts) {
  DetectorModel model(cfg);
  Rng rng(seed);
  std::vector<PhotonEvent> out;
  DetectionCounts local;
  std::vector<const FrameTuples*> order;
  for (const auto& f : frames) order.push_back(&f);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->frame_id < b->frame_id; });
  for (const auto* f : order) model.frame(f->frame_id, f->tuples, rng, out, local);
  if (counts) *counts += local;
  return out;
}

}  // namespace ocm
