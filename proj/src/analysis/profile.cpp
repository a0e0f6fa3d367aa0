#include <cmath>

#include "ocm/analysis.hpp"
#include "ocm/error.hpp"

namespace ocm {

void Profile1D::validate() const {
  if (positions.size() != values.size() || (!sigma.empty() && sigma.size() != values.size()))
    fail(ErrorCode::InvalidArgument, "profile arrays differ in length");
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) fail(ErrorCode::InvalidArgument, "profile values must be finite");
    if (k > 0 && !(positions[k] > positions[k - 1])) fail(ErrorCode::InvalidArgument, "profile positions must increase");
  }
}

Band band_around(const GridSpec& g, Axis summed_axis, double centre, double half_width) {
  const std::size_t n = summed_axis == Axis::Y ? g.ny : g.nx;
  Band b{n, 0};
  for (std::size_t k = 0; k < n; ++k) {
    const double c = summed_axis == Axis::Y ? g.y(k) : g.x(k);
    if (std::fabs(c - centre) <= half_width * (1.0 + 1e-12)) {
      b.begin = std::min(b.begin, k);
      b.end = k + 1;
    }
  }
  if (b.begin >= b.end) b = {0, 0};
  return b;
}

Band full_band(const GridSpec& g, Axis summed_axis) { return {0, summed_axis == Axis::Y ? g.ny : g.nx}; }

namespace {

template <typename Get, typename GetVar>
Profile1D project(const GridSpec& g, Axis axis, Band band, Get get, GetVar var, bool with_sigma) {
  const Axis summed = axis == Axis::X ? Axis::Y : Axis::X;
  const std::size_t n_sum = summed == Axis::Y ? g.ny : g.nx;
  if (band.begin >= band.end || band.end > n_sum) fail(ErrorCode::EmptyBand, "projection band is empty or outside the image");
  const std::size_t n = axis == Axis::X ? g.nx : g.ny;
  Profile1D p;
  p.positions.resize(n);
  p.values.assign(n, 0.0);
  if (with_sigma) p.sigma.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    p.positions[k] = axis == Axis::X ? g.x(k) : g.y(k);
    double s = 0.0, v = 0.0;
    for (std::size_t b = band.begin; b < band.end; ++b) {
      const std::size_t i = axis == Axis::X ? k : b, j = axis == Axis::X ? b : k;
      s += get(i, j);
      v += var(i, j);
    }
    p.values[k] = s;
    if (with_sigma) p.sigma[k] = std::sqrt(std::max(v, 0.0));
  }
  return p;
}

}  // namespace

Profile1D cross_section(const FieldGrid& image, Axis axis, Band band, bool count_data) {
  return project(
      image.spec(), axis, band, [&](std::size_t i, std::size_t j) { return image(i, j).real(); },
      [&](std::size_t i, std::size_t j) { return std::fabs(image(i, j).real()); }, count_data);
}

Profile1D cross_section(const CentroidImage& image, Axis axis, Band band) {
  const auto g = image.grid();
  const bool has_var = !image.variance.empty();
  return project(
      g, axis, band, [&](std::size_t i, std::size_t j) { return image.values[j * g.nx + i]; },
      [&](std::size_t i, std::size_t j) { return has_var ? image.variance[j * g.nx + i] : 0.0; }, has_var);
}

Profile1D peak_normalized(Profile1D p) {
  double m = 0.0;
  for (double v : p.values) m = std::max(m, v);
  if (m > 0.0) {
    for (double& v : p.values) v /= m;
    for (double& s : p.sigma) s /= m;
  }
  return p;
}

}  // namespace ocm
