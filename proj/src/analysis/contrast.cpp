#include <cmath>

#include "ocm/analysis.hpp"
#include "ocm/error.hpp"

namespace ocm {
namespace {

// Strict local maxima, with runs of equal values treated as one candidate at the run centre.
std::vector<std::size_t> local_maxima(const std::vector<double>& y) {
  std::vector<std::size_t> out;
  std::size_t i = 0;
  while (i < y.size()) {
    std::size_t j = i;
    while (j + 1 < y.size() && y[j + 1] == y[i]) ++j;
    const bool left = i > 0 && y[i - 1] < y[i];
    const bool right = j + 1 < y.size() && y[j + 1] < y[i];
    if (left && right) out.push_back((i + j) / 2);
    i = j + 1;
  }
  return out;
}

}  // namespace

ContrastReport slit_contrast(const Profile1D& p, int n_slits, double expected_pitch, double centre, double threshold) {
  p.validate();
  if (n_slits < 2 || !(expected_pitch > 0)) fail(ErrorCode::InvalidArgument, "need at least two slits and a positive pitch");
  if (p.size() < 3) fail(ErrorCode::PeaksNotFound, "profile too short");
  const double first = centre - 0.5 * (n_slits - 1) * expected_pitch - 0.5 * expected_pitch;
  const double last = centre + 0.5 * (n_slits - 1) * expected_pitch + 0.5 * expected_pitch;
  if (p.positions.front() > first || p.positions.back() < last)
    fail(ErrorCode::PeaksNotFound, "profile does not span every slit window");
  double top = 0.0;
  for (double v : p.values) top = std::max(top, v);
  if (!(top > 0.0)) fail(ErrorCode::PeaksNotFound, "profile has no positive values");

  ContrastReport r;
  const auto cand = local_maxima(p.values);
  std::vector<std::size_t> peaks;
  for (int s = 0; s < n_slits; ++s) {
    const double c = centre + (s - 0.5 * (n_slits - 1)) * expected_pitch;
    std::size_t best = p.size();
    for (std::size_t k : cand)
      if (std::fabs(p.positions[k] - c) < 0.5 * expected_pitch && (best == p.size() || p.values[k] > p.values[best])) best = k;
    if (best == p.size()) return r;  // a slit without its own maximum is not resolved
    peaks.push_back(best);
  }
  double sum_max = 0.0, sum_min = 0.0;
  for (std::size_t s = 0; s < peaks.size(); ++s) {
    r.maxima_positions.push_back(p.positions[peaks[s]]);
    r.maxima.push_back(p.values[peaks[s]]);
    sum_max += p.values[peaks[s]];
    if (s + 1 < peaks.size()) {
      double m = p.values[peaks[s]];
      for (std::size_t k = peaks[s]; k <= peaks[s + 1]; ++k) m = std::min(m, p.values[k]);
      r.minima.push_back(m);
      sum_min += m;
    }
  }
  const double mean_max = sum_max / static_cast<double>(r.maxima.size());
  const double mean_min = sum_min / static_cast<double>(r.minima.size());
  r.contrast = std::clamp(1.0 - mean_min / mean_max, 0.0, 1.0);
  r.resolved = r.contrast >= threshold;
  return r;
}

}  // namespace ocm
