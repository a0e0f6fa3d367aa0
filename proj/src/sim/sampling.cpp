#include "ocm/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "ocm/error.hpp"

namespace ocm {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(master) ^ mix(index + 0x632be59bd9b4e019ULL));
}

DiscreteSampler2D::DiscreteSampler2D(const FieldGrid& density) : spec_(density.spec()) {
  const std::size_t nx = spec_.nx, ny = spec_.ny;
  row_cdf_.resize(ny);
  cell_cdf_.resize(nx * ny);
  double total = 0.0;
  for (std::size_t j = 0; j < ny; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
      const double v = density(i, j).real();
      if (!(v >= 0.0) || !std::isfinite(v)) fail(ErrorCode::UnnormalizableDensity, "density must be finite and non-negative");
      acc += v;
      cell_cdf_[j * nx + i] = acc;
    }
    total += acc;
    row_cdf_[j] = total;
  }
  if (!(total > 0.0) || !std::isfinite(total)) fail(ErrorCode::UnnormalizableDensity, "density integrates to zero");
}

std::pair<std::size_t, std::size_t> DiscreteSampler2D::sample_cell(Rng& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = u(rng) * row_cdf_.back();
  auto jt = std::upper_bound(row_cdf_.begin(), row_cdf_.end(), r);
  // upper_bound never lands on a zero-weight row; the end check only guards round-off.
  if (jt == row_cdf_.end()) jt = std::prev(row_cdf_.end());
  const auto j = static_cast<std::size_t>(jt - row_cdf_.begin());
  const auto row_begin = cell_cdf_.begin() + static_cast<std::ptrdiff_t>(j * spec_.nx);
  const auto row_end = row_begin + static_cast<std::ptrdiff_t>(spec_.nx);
  const double row_total = *(row_end - 1);
  const double s = u(rng) * row_total;
  auto it = std::upper_bound(row_begin, row_end, s);
  if (it == row_end) it = row_end - 1;
  return {static_cast<std::size_t>(it - row_begin), j};
}

Point2 DiscreteSampler2D::sample(Rng& rng) const {
  const auto [i, j] = sample_cell(rng);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const double jx = u(rng), jy = u(rng);
  return {spec_.x(i) + jx * spec_.dx, spec_.y(j) + jy * spec_.dy};
}

}  // namespace ocm
