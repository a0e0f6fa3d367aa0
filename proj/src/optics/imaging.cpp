#include "ocm/imaging.hpp"

#include <cmath>

#include "ocm/error.hpp"
#include "ocm/fft.hpp"
#include "ocm/special.hpp"

namespace ocm {

void ImagingSystem::validate() const {
  if (!(pupil_radius > 0) || !(object_distance > 0) || !(wavelength > 0) || !(magnification > 0))
    fail(ErrorCode::InvalidArgument, "imaging system lengths and magnification must be positive");
  if (const auto* g = std::get_if<GaussianPupil>(&pupil); g && !(g->std_dev > 0))
    fail(ErrorCode::InvalidArgument, "Gaussian pupil std_dev must be positive");
}

double ImagingSystem::somb_scale() const { return kTwoPi * pupil_radius / (object_distance * wavelength); }

double ImagingSystem::rayleigh_radius() const { return 1.22 * wavelength * object_distance / (2.0 * pupil_radius); }

double ImagingSystem::first_zero_radius() const { return kBesselJ1FirstZero / somb_scale(); }

double ImagingSystem::gaussian_psf_std() const {
  const auto* g = std::get_if<GaussianPupil>(&pupil);
  if (!g) fail(ErrorCode::WrongPupilProfile, "Gaussian PSF width requested for a hard pupil");
  return object_distance * wavelength / (kTwoPi * g->std_dev);
}

double ImagingSystem::characteristic_radius() const {
  return gaussian() ? gaussian_psf_std() : first_zero_radius();
}

ImagingSystem ImagingSystem::with_wavelength(double lambda) const {
  ImagingSystem s = *this;
  s.wavelength = lambda;
  return s;
}

FieldGrid sample_psf(const ImagingSystem& sys, const GridSpec& grid) {
  sys.validate();
  FieldGrid h(grid, FieldKind::Real);
  if (sys.gaussian()) {
    const double s = sys.gaussian_psf_std();
    const double inv = 1.0 / (2.0 * s * s);
    for (std::size_t j = 0; j < grid.ny; ++j)
      for (std::size_t i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i), y = grid.y(j);
        h(i, j) = std::exp(-(x * x + y * y) * inv);
      }
  } else {
    const double a = sys.somb_scale();
    for (std::size_t j = 0; j < grid.ny; ++j)
      for (std::size_t i = 0; i < grid.nx; ++i) h(i, j) = somb(a * std::hypot(grid.x(i), grid.y(j)));
  }
  return h;
}

FieldGrid single_lens_psf(const ImagingSystem& sys, const GridSpec& grid) {
  sys.validate();
  grid.validate();
  const double r = sys.characteristic_radius();
  const double max_spacing = sys.gaussian() ? r / 2.0 : r / 4.0;
  if (grid.dx > max_spacing || grid.dy > max_spacing)
    fail(ErrorCode::GridTooCoarse, "PSF spacing exceeds the sampling limit");
  if (grid.extent_x() < 3.0 * r || grid.extent_y() < 3.0 * r)
    fail(ErrorCode::InvalidArgument, "PSF grid must span at least three characteristic radii");
  return sample_psf(sys, grid);
}

GridSpec kernel_grid_for(const GridSpec& g) { return GridSpec::centered(2 * g.nx - 1, 2 * g.ny - 1, g.dx, g.dy); }

FieldGrid image_through_kernel(const Aperture& a, const GridSpec& image_grid, double magnification,
                               const FieldGrid& kernel, bool coherent) {
  const GridSpec obj = image_grid.scaled(1.0 / magnification);
  FieldGrid field = a.rasterize(obj);
  FieldGrid out;
  if (coherent) {
    out = convolve2d_same(field, kernel).abs2();
  } else {
    out = convolve2d_same(field.abs2(), kernel.abs2());
    out.set_kind(FieldKind::Real);
    for (auto& v : out.values()) v = cplx(std::max(v.real(), 0.0), 0.0);
  }
  return out.with_spec(image_grid);
}

namespace {

FieldGrid classical_image(const Aperture& a, const ImagingSystem& sys, const GridSpec& image_grid, bool coherent) {
  sys.validate();
  image_grid.validate();
  const GridSpec obj = image_grid.scaled(1.0 / sys.magnification);
  const double r = sys.characteristic_radius();
  const double max_spacing = sys.gaussian() ? r / 2.0 : r / 4.0;
  if (obj.dx > max_spacing || obj.dy > max_spacing)
    fail(ErrorCode::GridTooCoarse, "object-plane spacing under-samples the PSF");
  const FieldGrid h = sample_psf(sys, kernel_grid_for(obj));
  return image_through_kernel(a, image_grid, sys.magnification, h, coherent);
}

}  // namespace

FieldGrid coherent_image(const Aperture& a, const ImagingSystem& sys, const GridSpec& image_grid) {
  return classical_image(a, sys, image_grid, true);
}

FieldGrid incoherent_image(const Aperture& a, const ImagingSystem& sys, const GridSpec& image_grid) {
  return classical_image(a, sys, image_grid, false);
}

}  // namespace ocm
