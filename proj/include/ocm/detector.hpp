#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace ocm {

struct PixelIndex {
  int ix = 0;
  int iy = 0;
};

// 32x32 time-stamping single-photon sensor, centred on the optical axis.
struct DetectorConfig {
  int n_pixels_x = 32;
  int n_pixels_y = 32;
  double pixel_pitch = 43.75e-6;
  double active_width = 1.4e-3;
  double active_height = 1.4e-3;
  double time_bin = 205e-12;
  double frame_duration = 45e-9;
  double frame_rate = 800e3;
  double pde = 0.008;
  double dark_count_rate = 1e3;
  // Optional per-pixel dark rates (Hz), row-major n_pixels_x * n_pixels_y; overrides dark_count_rate.
  std::vector<double> dark_rate_map;
  double crosstalk_prob = 0.01;

  void validate() const;
  double duty_cycle() const { return frame_duration * frame_rate; }
  int n_time_bins() const;
  double dark_rate(int ix, int iy) const;
  double total_dark_rate() const;
  std::size_t n_pixels() const { return static_cast<std::size_t>(n_pixels_x) * static_cast<std::size_t>(n_pixels_y); }
  double sensor_width() const { return n_pixels_x * pixel_pitch; }
  double sensor_height() const { return n_pixels_y * pixel_pitch; }
  std::optional<PixelIndex> pixel_of(double x, double y) const;
  double pixel_center_x(int ix) const { return (ix + 0.5) * pixel_pitch - 0.5 * sensor_width(); }
  double pixel_center_y(int iy) const { return (iy + 0.5) * pixel_pitch - 0.5 * sensor_height(); }
  int centroid_bins_x() const { return 2 * n_pixels_x - 1; }
  int centroid_bins_y() const { return 2 * n_pixels_y - 1; }
  int coincidence_window_bins(double window_seconds) const;
};

struct PhotonEvent {
  std::uint64_t frame_id = 0;
  std::uint16_t ix = 0;
  std::uint16_t iy = 0;
  std::uint16_t t_bin = 0;
  bool operator==(const PhotonEvent&) const = default;
};

// File order: frame, then time bin, then row, then column.
inline bool event_less(const PhotonEvent& a, const PhotonEvent& b) {
  if (a.frame_id != b.frame_id) return a.frame_id < b.frame_id;
  if (a.t_bin != b.t_bin) return a.t_bin < b.t_bin;
  if (a.iy != b.iy) return a.iy < b.iy;
  return a.ix < b.ix;
}

}  // namespace ocm
