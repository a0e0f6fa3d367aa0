#include "ocm/detector.hpp"

#include <cmath>
#include <numeric>

#include "ocm/error.hpp"

namespace ocm {

void DetectorConfig::validate() const {
  if (n_pixels_x < 2 || n_pixels_y < 2 || n_pixels_x > 65535 || n_pixels_y > 65535)
    fail(ErrorCode::InvalidArgument, "sensor needs 2..65535 pixels per axis");
  if (!(pixel_pitch > 0)) fail(ErrorCode::InvalidArgument, "pixel pitch must be positive");
  if (std::fabs(sensor_width() - active_width) > 1e-12 * active_width ||
      std::fabs(sensor_height() - active_height) > 1e-12 * active_height)
    fail(ErrorCode::InvalidArgument, "pitch times pixel count must equal the active region");
  if (!(time_bin > 0) || !(frame_duration > 0) || !(frame_rate > 0))
    fail(ErrorCode::InvalidArgument, "time bin, frame duration and frame rate must be positive");
  if (!(duty_cycle() > 0) || duty_cycle() > 1.0) fail(ErrorCode::InvalidArgument, "duty cycle must lie in (0, 1]");
  if (n_time_bins() > 65535) fail(ErrorCode::InvalidArgument, "too many time bins per frame");
  if (!(pde >= 0 && pde <= 1)) fail(ErrorCode::InvalidArgument, "pde must lie in [0, 1]");
  if (!(crosstalk_prob >= 0 && crosstalk_prob <= 1)) fail(ErrorCode::InvalidArgument, "crosstalk_prob must lie in [0, 1]");
  if (!(dark_count_rate >= 0)) fail(ErrorCode::InvalidArgument, "dark count rate must be non-negative");
  if (!dark_rate_map.empty()) {
    if (dark_rate_map.size() != n_pixels()) fail(ErrorCode::InvalidArgument, "dark rate map size must match the sensor");
    for (double r : dark_rate_map)
      if (!(r >= 0)) fail(ErrorCode::InvalidArgument, "dark rates must be non-negative");
  }
}

int DetectorConfig::n_time_bins() const { return static_cast<int>(std::ceil(frame_duration / time_bin - 1e-9)); }

double DetectorConfig::dark_rate(int ix, int iy) const {
  if (dark_rate_map.empty()) return dark_count_rate;
  return dark_rate_map[static_cast<std::size_t>(iy) * static_cast<std::size_t>(n_pixels_x) + static_cast<std::size_t>(ix)];
}

double DetectorConfig::total_dark_rate() const {
  if (dark_rate_map.empty()) return dark_count_rate * static_cast<double>(n_pixels());
  return std::accumulate(dark_rate_map.begin(), dark_rate_map.end(), 0.0);
}

std::optional<PixelIndex> DetectorConfig::pixel_of(double x, double y) const {
  const double fx = std::floor((x + 0.5 * sensor_width()) / pixel_pitch);
  const double fy = std::floor((y + 0.5 * sensor_height()) / pixel_pitch);
  if (!(fx >= 0) || !(fy >= 0) || fx >= n_pixels_x || fy >= n_pixels_y) return std::nullopt;
  return PixelIndex{static_cast<int>(fx), static_cast<int>(fy)};
}

int DetectorConfig::coincidence_window_bins(double window_seconds) const {
  if (!(window_seconds >= 0)) fail(ErrorCode::InvalidArgument, "coincidence window must be non-negative");
  return static_cast<int>(std::floor(window_seconds / time_bin + 1e-9));
}

}  // namespace ocm
