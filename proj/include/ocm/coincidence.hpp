#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "ocm/detector.hpp"
#include "ocm/parallel.hpp"

namespace ocm {

// Photon 1 is the earlier event in file order.
struct CoincidencePair {
  std::uint64_t frame_id = 0;
  std::uint16_t ix1 = 0, iy1 = 0, ix2 = 0, iy2 = 0;
  std::uint16_t t1 = 0, t2 = 0;

  int cx() const { return ix1 + ix2; }
  int cy() const { return iy1 + iy2; }
  int dx() const { return ix1 - ix2; }
  int dy() const { return iy1 - iy2; }
  CoincidencePair swapped() const { return {frame_id, ix2, iy2, ix1, iy1, t2, t1}; }
};

struct CoincidenceOptions {
  int window_bins = 4;  // floor(1 ns / 205 ps)
  int min_xi = 1;       // Chebyshev distance must exceed this
  bool strict_one_pair = false;
};

struct CoincidenceResult {
  std::vector<CoincidencePair> pairs;
  std::uint64_t rejected_by_cut = 0;
  std::uint64_t multi_pair_frames = 0;
  std::uint64_t dropped_multi_pairs = 0;  // strict mode only
  std::uint64_t frames_with_events = 0;
};

inline int chebyshev(int dx, int dy) { return std::max(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy); }

// Throws UnsortedInput unless events are ordered by (frame_id, t_bin).
void require_sorted(std::span<const PhotonEvent> events);

// Pairs within one frame's events; returns the number of admissible pairs found.
std::uint64_t pair_frame(std::span<const PhotonEvent> frame, const CoincidenceOptions& opt,
                         std::vector<CoincidencePair>& out, std::uint64_t& rejected);

CoincidenceResult extract_coincidences(std::span<const PhotonEvent> events, const CoincidenceOptions& opt = {},
                                       Exec exec = Exec::Parallel);

// Visits every cross-frame pair (a in frame f, b in frame f + k) that passes the window and cut.
template <typename Visit>
void cross_pair_frames(std::span<const PhotonEvent> a, std::span<const PhotonEvent> b, const CoincidenceOptions& opt,
                       Visit&& visit) {
  for (const auto& e : a)
    for (const auto& g : b) {
      const int dt = static_cast<int>(e.t_bin) - static_cast<int>(g.t_bin);
      if ((dt < 0 ? -dt : dt) > opt.window_bins) continue;
      if (chebyshev(e.ix - g.ix, e.iy - g.iy) <= opt.min_xi) continue;
      visit(e, g);
    }
}

// Contiguous [begin, end) ranges of events sharing a frame id.
std::vector<std::pair<std::size_t, std::size_t>> frame_ranges(std::span<const PhotonEvent> events);

}  // namespace ocm
