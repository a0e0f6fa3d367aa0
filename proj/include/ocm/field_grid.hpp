#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ocm {

using cplx = std::complex<double>;

// Sample (i, j) sits at (origin_x + i*dx, origin_y + j*dy).
struct GridSpec {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  double origin_x = 0.0;
  double origin_y = 0.0;

  // Odd n puts a sample exactly on zero.
  static GridSpec centered(std::size_t n, double spacing);
  static GridSpec centered(std::size_t nx, std::size_t ny, double dx, double dy);

  double x(std::size_t i) const { return origin_x + static_cast<double>(i) * dx; }
  double y(std::size_t j) const { return origin_y + static_cast<double>(j) * dy; }
  double extent_x() const { return static_cast<double>(nx) * dx; }
  double extent_y() const { return static_cast<double>(ny) * dy; }
  std::size_t size() const { return nx * ny; }

  // Same sample counts, every coordinate multiplied by s.
  GridSpec scaled(double s) const;

  void validate() const;
  bool operator==(const GridSpec&) const = default;
};

enum class FieldKind : unsigned char { Real = 0, Complex = 1 };

class FieldGrid {
 public:
  FieldGrid() = default;
  explicit FieldGrid(const GridSpec& spec, FieldKind kind = FieldKind::Complex);
  FieldGrid(const GridSpec& spec, std::vector<cplx> values, FieldKind kind);

  const GridSpec& spec() const { return spec_; }
  FieldKind kind() const { return kind_; }
  void set_kind(FieldKind k) { kind_ = k; }

  std::size_t nx() const { return spec_.nx; }
  std::size_t ny() const { return spec_.ny; }
  double dx() const { return spec_.dx; }
  double dy() const { return spec_.dy; }
  double x(std::size_t i) const { return spec_.x(i); }
  double y(std::size_t j) const { return spec_.y(j); }

  cplx& operator()(std::size_t i, std::size_t j) { return values_[j * spec_.nx + i]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return values_[j * spec_.nx + i]; }

  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }

  // Relabel axes; values untouched.
  FieldGrid with_spec(const GridSpec& spec) const;

  FieldGrid abs2() const;
  double max_abs() const;
  double sum_abs2() const;
  // Integral of the real part (sum * dx * dy).
  double integral() const;
  void scale(double s);
  // Divide by max |v|; no-op on an all-zero grid.
  void normalize_peak();

 private:
  GridSpec spec_{};
  std::vector<cplx> values_;
  FieldKind kind_ = FieldKind::Complex;
};

double relative_l2(const FieldGrid& a, const FieldGrid& b);
double relative_linf(const FieldGrid& a, const FieldGrid& b);

}  // namespace ocm
