#include "ocm/coincidence.hpp"

#include <omp.h>

#include "ocm/error.hpp"

namespace ocm {

void require_sorted(std::span<const PhotonEvent> events) {
  for (std::size_t k = 1; k < events.size(); ++k) {
    const auto& p = events[k - 1];
    const auto& e = events[k];
    if (e.frame_id < p.frame_id || (e.frame_id == p.frame_id && e.t_bin < p.t_bin))
      fail(ErrorCode::UnsortedInput, "events must be sorted by (frame_id, t_bin); violation at index " + std::to_string(k));
  }
}

std::vector<std::pair<std::size_t, std::size_t>> frame_ranges(std::span<const PhotonEvent> events) {
  std::vector<std::pair<std::size_t, std::size_t>> r;
  std::size_t b = 0;
  for (std::size_t k = 1; k <= events.size(); ++k)
    if (k == events.size() || events[k].frame_id != events[b].frame_id) {
      r.emplace_back(b, k);
      b = k;
    }
  return r;
}

std::uint64_t pair_frame(std::span<const PhotonEvent> frame, const CoincidenceOptions& opt,
                         std::vector<CoincidencePair>& out, std::uint64_t& rejected) {
  std::uint64_t found = 0;
  for (std::size_t i = 0; i < frame.size(); ++i)
    for (std::size_t j = i + 1; j < frame.size(); ++j) {
      const auto& a = frame[i];
      const auto& b = frame[j];
      // Sorted by time within the frame, so later events only move further away.
      if (static_cast<int>(b.t_bin) - static_cast<int>(a.t_bin) > opt.window_bins) break;
      if (chebyshev(a.ix - b.ix, a.iy - b.iy) <= opt.min_xi) {
        ++rejected;
        continue;
      }
      out.push_back({a.frame_id, a.ix, a.iy, b.ix, b.iy, a.t_bin, b.t_bin});
      ++found;
    }
  return found;
}

namespace {

void process_frames(std::span<const PhotonEvent> events, const std::vector<std::pair<std::size_t, std::size_t>>& ranges,
                    std::size_t r0, std::size_t r1, const CoincidenceOptions& opt, CoincidenceResult& res) {
  for (std::size_t r = r0; r < r1; ++r) {
    const auto [b, e] = ranges[r];
    ++res.frames_with_events;
    const std::size_t before = res.pairs.size();
    const std::uint64_t n = pair_frame(events.subspan(b, e - b), opt, res.pairs, res.rejected_by_cut);
    if (n > 1) {
      ++res.multi_pair_frames;
      if (opt.strict_one_pair) {
        res.pairs.resize(before);
        res.dropped_multi_pairs += n;
      }
    }
  }
}

}  // namespace

CoincidenceResult extract_coincidences(std::span<const PhotonEvent> events, const CoincidenceOptions& opt, Exec exec) {
  if (opt.window_bins < 0 || opt.min_xi < 0) fail(ErrorCode::InvalidArgument, "window and min_xi must be non-negative");
  require_sorted(events);
  const auto ranges = frame_ranges(events);
  const int workers = exec == Exec::Parallel ? std::max(1, omp_get_max_threads()) : 1;
  const std::size_t n_parts = std::min<std::size_t>(ranges.size(), static_cast<std::size_t>(workers) * 4);
  if (n_parts <= 1) {
    CoincidenceResult res;
    process_frames(events, ranges, 0, ranges.size(), opt, res);
    return res;
  }
  std::vector<CoincidenceResult> parts(n_parts);
  const auto sparts = static_cast<long long>(n_parts);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::Parallel)
  for (long long p = 0; p < sparts; ++p) {
    const std::size_t r0 = ranges.size() * static_cast<std::size_t>(p) / n_parts;
    const std::size_t r1 = ranges.size() * static_cast<std::size_t>(p + 1) / n_parts;
    process_frames(events, ranges, r0, r1, opt, parts[static_cast<std::size_t>(p)]);
  }
  CoincidenceResult res;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.pairs.size();
  res.pairs.reserve(total);
  for (auto& p : parts) {
    res.pairs.insert(res.pairs.end(), p.pairs.begin(), p.pairs.end());
    res.rejected_by_cut += p.rejected_by_cut;
    res.multi_pair_frames += p.multi_pair_frames;
    res.dropped_multi_pairs += p.dropped_multi_pairs;
    res.frames_with_events += p.frames_with_events;
  }
  return res;
}

}  // namespace ocm
