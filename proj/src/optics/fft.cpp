#include "ocm/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "ocm/error.hpp"
#include "ocm/special.hpp"

namespace ocm {
namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place 2-D DFT of a row-major ny x nx buffer. sign = -1 forward, +1 backward (unnormalized).
void dft_inplace(std::vector<cplx>& buf, std::size_t nx, std::size_t ny, int sign) {
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(ny), static_cast<int>(nx), data, data,
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

bool same_spacing(double a, double b) { return std::fabs(a - b) <= 1e-9 * std::max(std::fabs(a), std::fabs(b)); }

void require_same_spacing(const FieldGrid& f, const FieldGrid& g) {
  if (!same_spacing(f.dx(), g.dx()) || !same_spacing(f.dy(), g.dy()))
    fail(ErrorCode::SpacingMismatch, "convolution operands must share sample spacing");
}

std::vector<cplx> phase_ramp(std::size_t n, double rate) {
  std::vector<cplx> r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = std::polar(1.0, rate * static_cast<double>(k));
  return r;
}

// Copy src into the corner of a zeroed px x py buffer.
std::vector<cplx> pad(const FieldGrid& src, std::size_t px, std::size_t py) {
  std::vector<cplx> buf(px * py, cplx{});
  for (std::size_t j = 0; j < src.ny(); ++j)
    for (std::size_t i = 0; i < src.nx(); ++i) buf[j * px + i] = src(i, j);
  return buf;
}

FieldKind combined_kind(const FieldGrid& f, const FieldGrid& g) {
  return (f.kind() == FieldKind::Real && g.kind() == FieldKind::Real) ? FieldKind::Real : FieldKind::Complex;
}

void drop_imaginary_if_real(FieldGrid& out) {
  if (out.kind() != FieldKind::Real) return;
  for (auto& v : out.values()) v = cplx(v.real(), 0.0);
}

}  // namespace

std::size_t next_fast_size(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t m = n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u, 7u})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

FieldGrid fourier_transform_2d(const FieldGrid& f, Direction dir,
                               std::optional<std::pair<double, double>> output_origin) {
  const std::size_t nx = f.nx(), ny = f.ny();
  const double dqx = kTwoPi / (static_cast<double>(nx) * f.dx());
  const double dqy = kTwoPi / (static_cast<double>(ny) * f.dy());
  const double q0x = output_origin ? output_origin->first : -static_cast<double>(nx / 2) * dqx;
  const double q0y = output_origin ? output_origin->second : -static_cast<double>(ny / 2) * dqy;
  const double x0 = f.spec().origin_x, y0 = f.spec().origin_y;
  const double s = dir == Direction::Forward ? -1.0 : 1.0;

  // sum_n f_n exp(s i q_k x_n) with x_n = x0 + n dx, q_k = q0 + k dq factors into
  // exp(s i q0 n dx) pre-phase, a length-n DFT, and exp(s i (q0 x0 + k dq x0)) post-phase.
  const auto pre_x = phase_ramp(nx, s * q0x * f.dx());
  const auto pre_y = phase_ramp(ny, s * q0y * f.dy());
  const auto post_x = phase_ramp(nx, s * dqx * x0);
  const auto post_y = phase_ramp(ny, s * dqy * y0);
  const double weight = dir == Direction::Forward ? f.dx() * f.dy() : f.dx() * f.dy() / (kTwoPi * kTwoPi);
  const cplx global = std::polar(weight, s * (q0x * x0 + q0y * y0));

  std::vector<cplx> buf(f.values());
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) buf[j * nx + i] *= pre_x[i] * pre_y[j];
  dft_inplace(buf, nx, ny, static_cast<int>(s));
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) buf[j * nx + i] *= global * post_x[i] * post_y[j];

  GridSpec out;
  out.nx = nx;
  out.ny = ny;
  out.dx = dqx;
  out.dy = dqy;
  out.origin_x = q0x;
  out.origin_y = q0y;
  return FieldGrid(out, std::move(buf), FieldKind::Complex);
}

FieldGrid convolve2d(const FieldGrid& f, const FieldGrid& g) {
  require_same_spacing(f, g);
  const std::size_t nx = f.nx() + g.nx() - 1, ny = f.ny() + g.ny() - 1;
  const std::size_t px = next_fast_size(nx), py = next_fast_size(ny);
  auto a = pad(f, px, py);
  auto b = pad(g, px, py);
  dft_inplace(a, px, py, -1);
  dft_inplace(b, px, py, -1);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k];
  dft_inplace(a, px, py, +1);

  GridSpec spec;
  spec.nx = nx;
  spec.ny = ny;
  spec.dx = f.dx();
  spec.dy = f.dy();
  spec.origin_x = f.spec().origin_x + g.spec().origin_x;
  spec.origin_y = f.spec().origin_y + g.spec().origin_y;
  FieldGrid out(spec, combined_kind(f, g));
  const double w = f.dx() * f.dy() / static_cast<double>(px * py);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) out(i, j) = a[j * px + i] * w;
  drop_imaginary_if_real(out);
  return out;
}

FieldGrid convolve2d_same(const FieldGrid& f, const FieldGrid& g) {
  require_same_spacing(f, g);
  const double kx = -g.spec().origin_x / f.dx();
  const double ky = -g.spec().origin_y / f.dy();
  const double rkx = std::round(kx), rky = std::round(ky);
  if (std::fabs(kx - rkx) > 1e-6 || std::fabs(ky - rky) > 1e-6)
    fail(ErrorCode::GridMismatch, "kernel origin is not on the sample lattice");
  if (rkx < 0 || rky < 0) fail(ErrorCode::GridMismatch, "kernel must contain its origin");
  const auto full = convolve2d(f, g);
  const auto ox = static_cast<std::size_t>(rkx), oy = static_cast<std::size_t>(rky);
  FieldGrid out(f.spec(), full.kind());
  for (std::size_t j = 0; j < f.ny(); ++j)
    for (std::size_t i = 0; i < f.nx(); ++i) out(i, j) = full(i + ox, j + oy);
  return out;
}

FieldGrid self_convolve(const FieldGrid& h, int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "self-convolution order must be >= 1");
  if (n == 1) return h;
  const std::size_t mx = h.nx(), my = h.ny();
  const auto nn = static_cast<std::size_t>(n);
  const std::size_t sx = ((nn - 1) * (mx - 1) + 1) / 2, sy = ((nn - 1) * (my - 1) + 1) / 2;
  const std::size_t lx = nn * (mx - 1) + 1, ly = nn * (my - 1) + 1;
  // The window [s, s+m) of the n-fold linear result must be free of circular aliasing.
  const std::size_t px = next_fast_size(std::max(lx - sx, sx + mx));
  const std::size_t py = next_fast_size(std::max(ly - sy, sy + my));

  auto a = pad(h, px, py);
  dft_inplace(a, px, py, -1);
  for (auto& v : a) {
    cplx p = v;
    for (int k = 1; k < n; ++k) p *= v;
    v = p;
  }
  dft_inplace(a, px, py, +1);

  GridSpec spec = h.spec();
  spec.origin_x = static_cast<double>(n) * h.spec().origin_x + static_cast<double>(sx) * h.dx();
  spec.origin_y = static_cast<double>(n) * h.spec().origin_y + static_cast<double>(sy) * h.dy();
  FieldGrid out(spec, h.kind());
  const double w = std::pow(h.dx() * h.dy(), n - 1) / static_cast<double>(px * py);
  for (std::size_t j = 0; j < my; ++j)
    for (std::size_t i = 0; i < mx; ++i) out(i, j) = a[((j + sy) % py) * px + ((i + sx) % px)] * w;
  drop_imaginary_if_real(out);
  return out;
}

}  // namespace ocm
