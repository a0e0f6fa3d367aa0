#include "ocm/field_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ocm/error.hpp"

namespace ocm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::SpacingMismatch: return "SpacingMismatch";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::WrongPupilProfile: return "WrongPupilProfile";
    case ErrorCode::EvanescentInput: return "EvanescentInput";
    case ErrorCode::UnnormalizableDensity: return "UnnormalizableDensity";
    case ErrorCode::SinkWriteError: return "SinkWriteError";
    case ErrorCode::UnsortedInput: return "UnsortedInput";
    case ErrorCode::TooFewFrames: return "TooFewFrames";
    case ErrorCode::EmptyBand: return "EmptyBand";
    case ErrorCode::NoPeak: return "NoPeak";
    case ErrorCode::AmbiguousPeak: return "AmbiguousPeak";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::PeaksNotFound: return "PeaksNotFound";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

GridSpec GridSpec::centered(std::size_t n, double spacing) { return centered(n, n, spacing, spacing); }

GridSpec GridSpec::centered(std::size_t nx, std::size_t ny, double dx, double dy) {
  GridSpec g;
  g.nx = nx;
  g.ny = ny;
  g.dx = dx;
  g.dy = dy;
  g.origin_x = -0.5 * static_cast<double>(nx - 1) * dx;
  g.origin_y = -0.5 * static_cast<double>(ny - 1) * dy;
  return g;
}

GridSpec GridSpec::scaled(double s) const {
  GridSpec g = *this;
  g.dx *= s;
  g.dy *= s;
  g.origin_x *= s;
  g.origin_y *= s;
  return g;
}

void GridSpec::validate() const {
  if (nx < 2 || ny < 2) fail(ErrorCode::InvalidArgument, "grid needs at least 2 samples per axis");
  if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy))
    fail(ErrorCode::InvalidArgument, "grid spacing must be positive and finite");
  if (!std::isfinite(origin_x) || !std::isfinite(origin_y))
    fail(ErrorCode::InvalidArgument, "grid origin must be finite");
}

FieldGrid::FieldGrid(const GridSpec& spec, FieldKind kind) : spec_(spec), kind_(kind) {
  spec_.validate();
  values_.assign(spec_.size(), cplx{});
}

FieldGrid::FieldGrid(const GridSpec& spec, std::vector<cplx> values, FieldKind kind)
    : spec_(spec), values_(std::move(values)), kind_(kind) {
  spec_.validate();
  if (values_.size() != spec_.size()) fail(ErrorCode::GridMismatch, "value count does not match grid size");
}

FieldGrid FieldGrid::with_spec(const GridSpec& spec) const {
  if (spec.nx != spec_.nx || spec.ny != spec_.ny) fail(ErrorCode::GridMismatch, "relabel must keep sample counts");
  return FieldGrid(spec, values_, kind_);
}

FieldGrid FieldGrid::abs2() const {
  FieldGrid out(spec_, FieldKind::Real);
  for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] = std::norm(values_[k]);
  return out;
}

double FieldGrid::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double FieldGrid::sum_abs2() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return s;
}

double FieldGrid::integral() const {
  double s = 0.0;
  for (const auto& v : values_) s += v.real();
  return s * spec_.dx * spec_.dy;
}

void FieldGrid::scale(double s) {
  for (auto& v : values_) v *= s;
}

void FieldGrid::normalize_peak() {
  const double m = max_abs();
  if (m > 0.0) scale(1.0 / m);
}

static void require_same_shape(const FieldGrid& a, const FieldGrid& b) {
  if (a.nx() != b.nx() || a.ny() != b.ny()) fail(ErrorCode::GridMismatch, "grids differ in shape");
}

double relative_l2(const FieldGrid& a, const FieldGrid& b) {
  require_same_shape(a, b);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    num += std::norm(a.values()[k] - b.values()[k]);
    den += std::norm(b.values()[k]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double relative_linf(const FieldGrid& a, const FieldGrid& b) {
  require_same_shape(a, b);
  double num = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) num = std::max(num, std::abs(a.values()[k] - b.values()[k]));
  const double den = b.max_abs();
  return den > 0.0 ? num / den : num;
}

}  // namespace ocm
