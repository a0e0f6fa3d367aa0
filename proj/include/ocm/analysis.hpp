#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ocm/centroid_image.hpp"
#include "ocm/field_grid.hpp"

namespace ocm {

struct Profile1D {
  std::vector<double> positions;  // strictly increasing, metres
  std::vector<double> values;
  std::vector<double> sigma;  // empty for noiseless profiles

  std::size_t size() const { return positions.size(); }
  bool has_sigma() const { return !sigma.empty(); }
  void validate() const;
};

// Half-open index range on the axis being summed over.
struct Band {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Indices whose coordinate lies within half_width of centre.
Band band_around(const GridSpec& g, Axis summed_axis, double centre, double half_width);
Band full_band(const GridSpec& g, Axis summed_axis);

// Profile along `axis`, summing the other axis over `band`. count_data attaches sqrt(N) errors.
Profile1D cross_section(const FieldGrid& image, Axis axis, Band band, bool count_data = false);
Profile1D cross_section(const CentroidImage& image, Axis axis, Band band);

// Normalize values (and sigma) so the maximum is 1.
Profile1D peak_normalized(Profile1D p);

enum class WidthModel { None, SombSquared, Gaussian };
const char* to_string(WidthModel m);
WidthModel width_model_from_string(const std::string& s);

struct WidthReport {
  double fwhm = 0.0;
  std::optional<double> first_zero;
  WidthModel fit_model = WidthModel::None;
  double fit_residual = 0.0;  // RMS residual over the fit window relative to the peak
  double peak_position = 0.0;
  std::optional<double> fit_scale;  // somb argument scale or Gaussian std
};

// Throws NoPeak for a non-positive profile or missing half-max crossing, AmbiguousPeak for
// several separated lobes above half maximum when no model is given.
WidthReport width_metrics(const Profile1D& p, WidthModel model = WidthModel::None);

// Half-max crossing width of a profile, no smoothing or fitting.
double crossing_fwhm(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingFit {
  double alpha = 0.0;  // fwhm ~ N^-alpha
  double ci_low = 0.0;
  double ci_high = 0.0;
  double std_error = 0.0;
  double prefactor = 0.0;
};

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& n_and_fwhm);

struct ContrastReport {
  double contrast = 0.0;
  bool resolved = false;
  std::vector<double> maxima_positions;
  std::vector<double> maxima;
  std::vector<double> minima;
};

inline constexpr double kResolvedContrast = 0.1;

ContrastReport slit_contrast(const Profile1D& p, int n_slits, double expected_pitch, double centre = 0.0,
                             double threshold = kResolvedContrast);

}  // namespace ocm
