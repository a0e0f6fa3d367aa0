#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ocm/coincidence.hpp"
#include "ocm/detector.hpp"
#include "ocm/field_grid.hpp"
#include "ocm/parallel.hpp"

namespace ocm {

// Counts on the (2n-1) x (2n-1) half-pixel centroid lattice; bin (cx, cy) row-major.
struct CentroidHistogram {
  int nx = 0;
  int ny = 0;
  std::vector<double> counts;

  CentroidHistogram() = default;
  explicit CentroidHistogram(const DetectorConfig& cfg);
  double& at(int cx, int cy) { return counts[static_cast<std::size_t>(cy * nx + cx)]; }
  double at(int cx, int cy) const { return counts[static_cast<std::size_t>(cy * nx + cx)]; }
  double total() const;
  CentroidHistogram& operator+=(const CentroidHistogram& o);
};

CentroidHistogram histogram_pairs(std::span<const CoincidencePair> pairs, const DetectorConfig& cfg);

struct AccidentalEstimate {
  CentroidHistogram raw;     // cross-frame pair counts
  CentroidHistogram scaled;  // raw * scale, expected same-frame accidentals
  double scale = 0.0;
  std::uint64_t n_frames = 0;
  int offset = 1;
};

// Cross-frame pairing of frame f with frame f + k under the same window and cut.
// The scale 0.5 * n / (n - k) turns ordered cross-frame pairs over n - k frame pairs into
// expected unordered same-frame accidentals over n frames.
AccidentalEstimate estimate_accidentals(std::span<const PhotonEvent> events, std::uint64_t n_frames,
                                        const CoincidenceOptions& opt, const DetectorConfig& cfg, int k = 1,
                                        Exec exec = Exec::Parallel);

double accidental_scale(std::uint64_t n_frames, int k);

enum class CentroidMode { SumOverXi, AverageOverXi };
const char* to_string(CentroidMode m);
CentroidMode centroid_mode_from_string(const std::string& s);

struct CentroidImage {
  int nx = 0;
  int ny = 0;
  double spacing_x = 0.0;  // half the pixel pitch
  double spacing_y = 0.0;
  double origin_x = 0.0;  // centre of bin (0, 0)
  double origin_y = 0.0;
  CentroidMode mode = CentroidMode::SumOverXi;
  bool accidental_corrected = false;
  std::vector<double> values;
  std::vector<double> variance;
  std::vector<double> coverage;  // admissible unordered (dx, dy) cells per bin

  double at(int cx, int cy) const { return values[static_cast<std::size_t>(cy * nx + cx)]; }
  GridSpec grid() const;
  FieldGrid to_grid() const;
};

// Number of unordered pixel pairs with centroid bin (cx, cy) that pass the Chebyshev cut.
std::vector<double> admissible_cells(const DetectorConfig& cfg, int min_xi);

// Histogram minus accidentals; AverageOverXi additionally divides by the admissible cell count.
// Negative bins are kept.
CentroidImage centroid_image(const CentroidHistogram& pairs, const AccidentalEstimate* accidentals, CentroidMode mode,
                             const DetectorConfig& cfg, int min_xi);

CentroidImage centroid_image(std::span<const CoincidencePair> pairs, const AccidentalEstimate* accidentals,
                             CentroidMode mode, const DetectorConfig& cfg, int min_xi);

// Per-pixel event counts on the sensor grid.
FieldGrid singles_image(std::span<const PhotonEvent> events, const DetectorConfig& cfg);

enum class Axis { X, Y };

// Symmetric n x n matrix over (pixel of photon 1, pixel of photon 2) along one axis;
// both orderings of each pair contribute.
std::vector<double> joint_correlation_histogram(std::span<const CoincidencePair> pairs, Axis axis,
                                                const DetectorConfig& cfg);

}  // namespace ocm
