#include "ocm/centroid_psf.hpp"

#include <cmath>

#include "ocm/error.hpp"
#include "ocm/fft.hpp"
#include "ocm/imaging.hpp"
#include "ocm/special.hpp"

namespace ocm {
namespace {

// Four samples per first-zero radius of somb leave 2.3 samples inside the amplitude half-width;
// a Gaussian sampled at std/2 leaves 2.35.
constexpr double kMinHalfWidthSamples = 2.3;

void require_sampled(const FieldGrid& h) {
  if (amplitude_half_width_samples(h) < kMinHalfWidthSamples)
    fail(ErrorCode::GridTooCoarse, "PSF is too narrow for its sampling");
}

void require_order(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "photon number must be >= 1");
}

GridSpec divide_axes(const GridSpec& g, int n) { return g.scaled(1.0 / static_cast<double>(n)); }

}  // namespace

double amplitude_half_width_samples(const FieldGrid& h) {
  std::size_t pi = 0, pj = 0;
  double peak = -1.0;
  for (std::size_t j = 0; j < h.ny(); ++j)
    for (std::size_t i = 0; i < h.nx(); ++i)
      if (std::abs(h(i, j)) > peak) {
        peak = std::abs(h(i, j));
        pi = i;
        pj = j;
      }
  if (!(peak > 0.0)) fail(ErrorCode::InvalidArgument, "PSF is identically zero");
  const double half = 0.5 * peak;
  auto walk = [&](int step) {
    long long i = static_cast<long long>(pi);
    double prev = peak;
    for (double dist = 1.0;; dist += 1.0) {
      i += step;
      if (i < 0 || i >= static_cast<long long>(h.nx())) return dist - 1.0;
      const double v = std::abs(h(static_cast<std::size_t>(i), pj));
      if (v < half) return dist - 1.0 + (prev - half) / (prev - v);
      prev = v;
    }
  };
  return 0.5 * (walk(+1) + walk(-1));
}

FieldGrid centroid_psf(const FieldGrid& h, int n) {
  require_order(n);
  if (n == 1) return h;
  require_sampled(h);
  FieldGrid conv = self_convolve(h, n);
  conv.scale(static_cast<double>(n) * static_cast<double>(n));
  return conv.with_spec(divide_axes(conv.spec(), n));
}

FieldGrid pupil_transmission(const ImagingSystem& sys, const GridSpec& q_grid) {
  sys.validate();
  q_grid.validate();
  FieldGrid p(q_grid, FieldKind::Real);
  if (sys.gaussian()) {
    const double s = sys.gaussian_psf_std();
    const double amp = kTwoPi * s * s;
    for (std::size_t j = 0; j < q_grid.ny; ++j)
      for (std::size_t i = 0; i < q_grid.nx; ++i) {
        const double q2 = q_grid.x(i) * q_grid.x(i) + q_grid.y(j) * q_grid.y(j);
        p(i, j) = amp * std::exp(-0.5 * s * s * q2);
      }
  } else {
    const double a = sys.somb_scale();
    const double amp = 4.0 * kPi / (a * a);
    for (std::size_t j = 0; j < q_grid.ny; ++j)
      for (std::size_t i = 0; i < q_grid.nx; ++i)
        p(i, j) = std::hypot(q_grid.x(i), q_grid.y(j)) <= a ? amp : 0.0;
  }
  return p;
}

FieldGrid centroid_psf_fourier(const FieldGrid& pupil_q, int n, std::optional<std::pair<double, double>> output_origin) {
  require_order(n);
  FieldGrid powered = pupil_q;
  for (auto& v : powered.values()) {
    cplx p = v;
    for (int k = 1; k < n; ++k) p *= v;
    v = p;
  }
  const double nn = static_cast<double>(n);
  std::optional<std::pair<double, double>> origin;
  if (output_origin) origin = std::make_pair(output_origin->first * nn, output_origin->second * nn);
  FieldGrid x = fourier_transform_2d(powered, Direction::Inverse, origin);
  x.scale(nn * nn);
  if (pupil_q.kind() == FieldKind::Real) x.set_kind(FieldKind::Complex);
  return x.with_spec(divide_axes(x.spec(), n));
}

FieldGrid analytic_centroid_psf_circular(const ImagingSystem& sys, int n, const GridSpec& grid) {
  require_order(n);
  if (sys.gaussian()) fail(ErrorCode::WrongPupilProfile, "closed-form somb requires a hard circular pupil");
  return analytic_centroid_psf(sys, n, grid);
}

FieldGrid analytic_centroid_psf(const ImagingSystem& sys, int n, const GridSpec& grid) {
  require_order(n);
  sys.validate();
  grid.validate();
  FieldGrid H(grid, FieldKind::Real);
  const double nn = static_cast<double>(n);
  if (sys.gaussian()) {
    const double s = sys.gaussian_psf_std();
    const double c = nn / (2.0 * s * s);
    for (std::size_t j = 0; j < grid.ny; ++j)
      for (std::size_t i = 0; i < grid.nx; ++i) {
        const double r2 = grid.x(i) * grid.x(i) + grid.y(j) * grid.y(j);
        H(i, j) = std::exp(-c * r2);
      }
  } else {
    const double a = nn * sys.somb_scale();
    for (std::size_t j = 0; j < grid.ny; ++j)
      for (std::size_t i = 0; i < grid.nx; ++i) H(i, j) = somb(a * std::hypot(grid.x(i), grid.y(j)));
  }
  return H;
}

namespace {

FieldGrid ocm_image_impl(const Aperture& a, const ImagingSystem& sys, int n, const GridSpec& image_grid, bool coherent) {
  require_order(n);
  sys.validate();
  image_grid.validate();
  const GridSpec obj = image_grid.scaled(1.0 / sys.magnification);
  const double nn = static_cast<double>(n);
  const double limit = sys.gaussian() ? sys.gaussian_psf_std() / (2.0 * std::sqrt(nn))
                                      : sys.first_zero_radius() / (4.0 * nn);
  if (obj.dx > limit || obj.dy > limit) fail(ErrorCode::GridTooCoarse, "centroid grid under-samples the centroid PSF");
  const FieldGrid H = analytic_centroid_psf(sys, n, kernel_grid_for(obj));
  return image_through_kernel(a, image_grid, sys.magnification, H, coherent);
}

}  // namespace

FieldGrid ocm_image(const Aperture& a, const ImagingSystem& sys, int n, const GridSpec& image_grid) {
  return ocm_image_impl(a, sys, n, image_grid, true);
}

FieldGrid incoherent_ocm_image(const Aperture& a, const ImagingSystem& sys, int n, const GridSpec& image_grid) {
  return ocm_image_impl(a, sys, n, image_grid, false);
}

FieldGrid classical_centroid_psf(const FieldGrid& h, int n) {
  require_order(n);
  require_sampled(h);
  FieldGrid p = h.abs2();
  const double total = p.integral();
  if (!(total > 0.0)) fail(ErrorCode::InvalidArgument, "PSF has zero power");
  p.scale(1.0 / total);
  FieldGrid conv = self_convolve(p, n);
  FieldGrid out = conv.with_spec(divide_axes(conv.spec(), n));
  for (auto& v : out.values()) v = cplx(std::max(v.real(), 0.0), 0.0);
  const double z = out.integral();
  if (z > 0.0) out.scale(1.0 / z);
  return out;
}

FieldGrid far_field_pattern(const Aperture& a, int n, double scale, const GridSpec& object_grid,
                            const GridSpec& pupil_grid, Exec exec) {
  require_order(n);
  if (!(scale > 0.0)) fail(ErrorCode::InvalidArgument, "far-field scale must be positive");
  object_grid.validate();
  pupil_grid.validate();
  const FieldGrid A = a.rasterize(object_grid, exec);
  const std::size_t mx = object_grid.nx, my = object_grid.ny;
  const std::size_t px = pupil_grid.nx, py = pupil_grid.ny;
  const double kscale = static_cast<double>(n) / scale;

  // Separable transform: A~(kx, ky) = sum_j e^{-i ky y_j} sum_i e^{-i kx x_i} A(i, j) dx dy.
  std::vector<cplx> ex(px * mx), ey(py * my);
  for (std::size_t p = 0; p < px; ++p)
    for (std::size_t i = 0; i < mx; ++i) ex[p * mx + i] = std::polar(1.0, -kscale * pupil_grid.x(p) * object_grid.x(i));
  for (std::size_t r = 0; r < py; ++r)
    for (std::size_t j = 0; j < my; ++j) ey[r * my + j] = std::polar(1.0, -kscale * pupil_grid.y(r) * object_grid.y(j));

  std::vector<cplx> rows(my * px);
  const auto smy = static_cast<long long>(my);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (long long jj = 0; jj < smy; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    for (std::size_t p = 0; p < px; ++p) {
      cplx s{};
      for (std::size_t i = 0; i < mx; ++i) s += A(i, j) * ex[p * mx + i];
      rows[j * px + p] = s;
    }
  }

  FieldGrid out(pupil_grid, FieldKind::Real);
  const double w = object_grid.dx * object_grid.dy;
  const auto spy = static_cast<long long>(py);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (long long rr = 0; rr < spy; ++rr) {
    const auto r = static_cast<std::size_t>(rr);
    for (std::size_t p = 0; p < px; ++p) {
      cplx s{};
      for (std::size_t j = 0; j < my; ++j) s += ey[r * my + j] * rows[j * px + p];
      out(p, r) = std::norm(s * w);
    }
  }
  return out;
}

}  // namespace ocm
