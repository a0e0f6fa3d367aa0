#include "ocm/aperture.hpp"

#include <cmath>

#include "ocm/error.hpp"

namespace ocm {
namespace {

// Half-open [lo, hi) membership, tolerant to round-off in lattice coordinates.
bool inside(double v, double lo, double hi) {
  const double eps = 1e-9 * (hi - lo);
  return v >= lo - eps && v < hi - eps;
}

struct ShapeValue {
  double x, y;

  cplx operator()(const PointShape&) const { return (x == 0.0 && y == 0.0) ? 1.0 : 0.0; }

  cplx operator()(const SlitShape& s) const {
    if (!inside(y, -0.5 * s.length, 0.5 * s.length)) return 0.0;
    for (int k = 0; k < s.count; ++k) {
      const double c = (k - 0.5 * (s.count - 1)) * s.pitch;
      if (inside(x, c - 0.5 * s.line_width, c + 0.5 * s.line_width)) return 1.0;
    }
    return 0.0;
  }

  cplx operator()(const RectangleShape& r) const {
    return (inside(x, -0.5 * r.width, 0.5 * r.width) && inside(y, -0.5 * r.height, 0.5 * r.height)) ? 1.0 : 0.0;
  }

  cplx operator()(const GaussianSpotShape& g) const { return std::exp(-(x * x + y * y) / (g.waist * g.waist)); }

  cplx operator()(const MaskShape& m) const {
    const auto& s = m.mask.spec();
    const double fi = std::round((x - s.origin_x) / s.dx);
    const double fj = std::round((y - s.origin_y) / s.dy);
    if (fi < 0 || fj < 0 || fi >= static_cast<double>(s.nx) || fj >= static_cast<double>(s.ny)) return 0.0;
    return m.mask(static_cast<std::size_t>(fi), static_cast<std::size_t>(fj));
  }
};

void validate_shape(const ApertureShape& shape) {
  struct {
    void operator()(const PointShape&) const {}
    void operator()(const SlitShape& s) const {
      if (s.count < 1 || !(s.line_width > 0) || !(s.length > 0) || (s.count > 1 && !(s.pitch >= s.line_width)))
        fail(ErrorCode::InvalidArgument, "slits need count >= 1, positive width/length and pitch >= width");
    }
    void operator()(const RectangleShape& r) const {
      if (!(r.width > 0) || !(r.height > 0)) fail(ErrorCode::InvalidArgument, "rectangle sides must be positive");
    }
    void operator()(const GaussianSpotShape& g) const {
      if (!(g.waist > 0)) fail(ErrorCode::InvalidArgument, "Gaussian waist must be positive");
    }
    void operator()(const MaskShape& m) const {
      if (m.mask.values().empty()) fail(ErrorCode::InvalidArgument, "mask is empty");
      for (const auto& v : m.mask.values())
        if (!(std::abs(v) <= 1.0 + 1e-12)) fail(ErrorCode::InvalidArgument, "mask amplitudes must satisfy |A| <= 1");
    }
  } check;
  std::visit(check, shape);
}

}  // namespace

Aperture::Aperture(ApertureShape shape, double center_x, double center_y)
    : shape_(std::move(shape)), cx_(center_x), cy_(center_y) {
  validate_shape(shape_);
}

Aperture Aperture::point(double x, double y) { return Aperture(PointShape{}, x, y); }

Aperture Aperture::slits(int count, double line_width, double pitch, double length) {
  return Aperture(SlitShape{count, line_width, pitch, length});
}

Aperture Aperture::rectangle(double width, double height) { return Aperture(RectangleShape{width, height}); }

Aperture Aperture::gaussian_spot(double waist) { return Aperture(GaussianSpotShape{waist}); }

Aperture Aperture::mask(FieldGrid m) { return Aperture(MaskShape{std::move(m)}); }

Aperture Aperture::with_pump_waist(double waist) const {
  if (!(waist > 0)) fail(ErrorCode::InvalidArgument, "pump waist must be positive");
  Aperture a = *this;
  a.pump_waist_ = waist;
  return a;
}

cplx Aperture::value_at(double x, double y) const {
  const double u = x - cx_, v = y - cy_;
  cplx val = std::visit(ShapeValue{u, v}, shape_);
  if (pump_waist_) val *= std::exp(-(u * u + v * v) / (*pump_waist_ * *pump_waist_));
  return val;
}

FieldGrid Aperture::rasterize(const GridSpec& grid, Exec exec) const {
  const bool real = !std::holds_alternative<MaskShape>(shape_) ||
                    std::get<MaskShape>(shape_).mask.kind() == FieldKind::Real;
  FieldGrid out(grid, real ? FieldKind::Real : FieldKind::Complex);
  if (is_point()) {
    const double fi = std::round((cx_ - grid.origin_x) / grid.dx);
    const double fj = std::round((cy_ - grid.origin_y) / grid.dy);
    if (fi >= 0 && fj >= 0 && fi < static_cast<double>(grid.nx) && fj < static_cast<double>(grid.ny))
      out(static_cast<std::size_t>(fi), static_cast<std::size_t>(fj)) = 1.0;
    return out;
  }
  const auto ny = static_cast<long long>(grid.ny);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (long long j = 0; j < ny; ++j) {
    const auto row = static_cast<std::size_t>(j);
    for (std::size_t i = 0; i < grid.nx; ++i) out(i, row) = value_at(grid.x(i), grid.y(row));
  }
  return out;
}

}  // namespace ocm
