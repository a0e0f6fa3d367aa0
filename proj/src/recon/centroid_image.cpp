#include "ocm/centroid_image.hpp"

#include <omp.h>

#include <cmath>
#include <string>

#include "ocm/error.hpp"

namespace ocm {

CentroidHistogram::CentroidHistogram(const DetectorConfig& cfg)
    : nx(cfg.centroid_bins_x()), ny(cfg.centroid_bins_y()), counts(static_cast<std::size_t>(nx * ny), 0.0) {}

double CentroidHistogram::total() const {
  double s = 0.0;
  for (double v : counts) s += v;
  return s;
}

CentroidHistogram& CentroidHistogram::operator+=(const CentroidHistogram& o) {
  if (o.nx != nx || o.ny != ny) fail(ErrorCode::GridMismatch, "centroid histograms differ in size");
  for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += o.counts[k];
  return *this;
}

CentroidHistogram histogram_pairs(std::span<const CoincidencePair> pairs, const DetectorConfig& cfg) {
  CentroidHistogram h(cfg);
  for (const auto& p : pairs) {
    if (p.cx() >= h.nx || p.cy() >= h.ny) fail(ErrorCode::GridMismatch, "pair lies outside the sensor");
    h.at(p.cx(), p.cy()) += 1.0;
  }
  return h;
}

double accidental_scale(std::uint64_t n_frames, int k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "accidental frame offset must be >= 1");
  if (n_frames < 2 || n_frames <= static_cast<std::uint64_t>(k))
    fail(ErrorCode::TooFewFrames, "accidental estimation needs more frames than the pairing offset");
  const double n = static_cast<double>(n_frames);
  return 0.5 * n / (n - static_cast<double>(k));
}

AccidentalEstimate estimate_accidentals(std::span<const PhotonEvent> events, std::uint64_t n_frames,
                                        const CoincidenceOptions& opt, const DetectorConfig& cfg, int k, Exec exec) {
  AccidentalEstimate est;
  est.scale = accidental_scale(n_frames, k);
  est.n_frames = n_frames;
  est.offset = k;
  est.raw = CentroidHistogram(cfg);
  require_sorted(events);
  const auto ranges = frame_ranges(events);

  const int workers = exec == Exec::Parallel ? std::max(1, omp_get_max_threads()) : 1;
  std::vector<CentroidHistogram> partial(static_cast<std::size_t>(workers), CentroidHistogram(cfg));
  const auto nr = static_cast<long long>(ranges.size());
#pragma omp parallel for schedule(static) num_threads(workers) if (exec == Exec::Parallel)
  for (long long r = 0; r < nr; ++r) {
    auto& h = partial[static_cast<std::size_t>(exec == Exec::Parallel ? omp_get_thread_num() : 0)];
    const auto [b, e] = ranges[static_cast<std::size_t>(r)];
    const std::uint64_t target = events[b].frame_id + static_cast<std::uint64_t>(k);
    // Frame ids increase with r, so the partner, if present, is within the next k ranges.
    for (std::size_t q = static_cast<std::size_t>(r) + 1; q < ranges.size() && q <= static_cast<std::size_t>(r) + static_cast<std::size_t>(k); ++q) {
      const auto [b2, e2] = ranges[q];
      if (events[b2].frame_id > target) break;
      if (events[b2].frame_id != target) continue;
      cross_pair_frames(events.subspan(b, e - b), events.subspan(b2, e2 - b2), opt,
                        [&](const PhotonEvent& x, const PhotonEvent& y) { h.at(x.ix + y.ix, x.iy + y.iy) += 1.0; });
    }
  }
  // Integer-valued sums, so the merge order does not change the result.
  for (const auto& h : partial) est.raw += h;
  est.scaled = est.raw;
  for (auto& v : est.scaled.counts) v *= est.scale;
  return est;
}

const char* to_string(CentroidMode m) { return m == CentroidMode::SumOverXi ? "sum" : "average"; }

CentroidMode centroid_mode_from_string(const std::string& s) {
  if (s == "sum") return CentroidMode::SumOverXi;
  if (s == "average") return CentroidMode::AverageOverXi;
  fail(ErrorCode::InvalidArgument, "centroid mode must be 'sum' or 'average', got '" + s + "'");
}

GridSpec CentroidImage::grid() const {
  GridSpec g;
  g.nx = static_cast<std::size_t>(nx);
  g.ny = static_cast<std::size_t>(ny);
  g.dx = spacing_x;
  g.dy = spacing_y;
  g.origin_x = origin_x;
  g.origin_y = origin_y;
  return g;
}

FieldGrid CentroidImage::to_grid() const {
  std::vector<cplx> v(values.begin(), values.end());
  return FieldGrid(grid(), std::move(v), FieldKind::Real);
}

std::vector<double> admissible_cells(const DetectorConfig& cfg, int min_xi) {
  const int n = cfg.n_pixels_x, m = cfg.n_pixels_y;
  const int bx = 2 * n - 1, by = 2 * m - 1;
  // Ordered counts per axis keyed by (sum, |difference|), combined over the Chebyshev cut.
  std::vector<double> cov(static_cast<std::size_t>(bx * by), 0.0);
  auto axis_pairs = [](int npx, int c) {
    std::vector<int> diffs;
    for (int a = 0; a < npx; ++a) {
      const int b = c - a;
      if (b >= 0 && b < npx) diffs.push_back(a - b);
    }
    return diffs;
  };
  for (int cy = 0; cy < by; ++cy) {
    const auto dys = axis_pairs(m, cy);
    for (int cx = 0; cx < bx; ++cx) {
      const auto dxs = axis_pairs(n, cx);
      double ordered = 0.0;
      for (int dx : dxs)
        for (int dy : dys)
          if (chebyshev(dx, dy) > min_xi) ordered += 1.0;
      cov[static_cast<std::size_t>(cy * bx + cx)] = 0.5 * ordered;
    }
  }
  return cov;
}

CentroidImage centroid_image(const CentroidHistogram& pairs, const AccidentalEstimate* acc, CentroidMode mode,
                             const DetectorConfig& cfg, int min_xi) {
  if (pairs.nx != cfg.centroid_bins_x() || pairs.ny != cfg.centroid_bins_y())
    fail(ErrorCode::GridMismatch, "pair histogram does not match the detector's centroid grid");
  if (acc && (acc->scaled.nx != pairs.nx || acc->scaled.ny != pairs.ny))
    fail(ErrorCode::GridMismatch, "accidental histogram does not match the pair histogram");
  CentroidImage img;
  img.nx = pairs.nx;
  img.ny = pairs.ny;
  img.spacing_x = 0.5 * cfg.pixel_pitch;
  img.spacing_y = 0.5 * cfg.pixel_pitch;
  img.origin_x = -0.5 * cfg.sensor_width() + 0.5 * cfg.pixel_pitch;
  img.origin_y = -0.5 * cfg.sensor_height() + 0.5 * cfg.pixel_pitch;
  img.mode = mode;
  img.accidental_corrected = acc != nullptr;
  img.coverage = admissible_cells(cfg, min_xi);
  const std::size_t n = pairs.counts.size();
  img.values.resize(n);
  img.variance.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double v = pairs.counts[k];
    double var = pairs.counts[k];
    if (acc) {
      v -= acc->scaled.counts[k];
      var += acc->scale * acc->scale * acc->raw.counts[k];
    }
    if (mode == CentroidMode::AverageOverXi) {
      const double c = img.coverage[k];
      if (c > 0.0) {
        v /= c;
        var /= c * c;
      } else {
        v = 0.0;
        var = 0.0;
      }
    }
    img.values[k] = v;
    img.variance[k] = var;
  }
  return img;
}

CentroidImage centroid_image(std::span<const CoincidencePair> pairs, const AccidentalEstimate* acc, CentroidMode mode,
                             const DetectorConfig& cfg, int min_xi) {
  return centroid_image(histogram_pairs(pairs, cfg), acc, mode, cfg, min_xi);
}

FieldGrid singles_image(std::span<const PhotonEvent> events, const DetectorConfig& cfg) {
  GridSpec g;
  g.nx = static_cast<std::size_t>(cfg.n_pixels_x);
  g.ny = static_cast<std::size_t>(cfg.n_pixels_y);
  g.dx = g.dy = cfg.pixel_pitch;
  g.origin_x = cfg.pixel_center_x(0);
  g.origin_y = cfg.pixel_center_y(0);
  FieldGrid img(g, FieldKind::Real);
  for (const auto& e : events) {
    if (e.ix >= g.nx || e.iy >= g.ny) fail(ErrorCode::GridMismatch, "event outside the sensor");
    img(e.ix, e.iy) += 1.0;
  }
  return img;
}

std::vector<double> joint_correlation_histogram(std::span<const CoincidencePair> pairs, Axis axis,
                                                const DetectorConfig& cfg) {
  const int n = axis == Axis::X ? cfg.n_pixels_x : cfg.n_pixels_y;
  std::vector<double> m(static_cast<std::size_t>(n * n), 0.0);
  for (const auto& p : pairs) {
    const int a = axis == Axis::X ? p.ix1 : p.iy1;
    const int b = axis == Axis::X ? p.ix2 : p.iy2;
    m[static_cast<std::size_t>(a * n + b)] += 1.0;
    m[static_cast<std::size_t>(b * n + a)] += 1.0;
  }
  return m;
}

}  // namespace ocm
