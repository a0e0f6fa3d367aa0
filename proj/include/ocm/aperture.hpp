#pragma once

#include <optional>
#include <variant>

#include "ocm/field_grid.hpp"
#include "ocm/parallel.hpp"

namespace ocm {

struct PointShape {};

// Lines run along y and repeat along x.
struct SlitShape {
  int count = 3;
  double line_width = 70e-6;
  double pitch = 110e-6;
  double length = 350e-6;
};

struct RectangleShape {
  double width = 200e-6;
  double height = 300e-6;
};

// Amplitude exp(-r^2 / waist^2).
struct GaussianSpotShape {
  double waist = 25e-6;
};

// Nearest-neighbour lookup in the mask's own coordinates; zero outside.
struct MaskShape {
  FieldGrid mask;
};

using ApertureShape = std::variant<PointShape, SlitShape, RectangleShape, GaussianSpotShape, MaskShape>;

class Aperture {
 public:
  Aperture() = default;
  explicit Aperture(ApertureShape shape, double center_x = 0.0, double center_y = 0.0);

  static Aperture point(double x = 0.0, double y = 0.0);
  static Aperture slits(int count, double line_width, double pitch, double length);
  static Aperture rectangle(double width, double height);
  static Aperture gaussian_spot(double waist);
  static Aperture mask(FieldGrid m);

  // Gaussian illumination envelope exp(-r^2 / waist^2) about the aperture centre.
  Aperture with_pump_waist(double waist) const;

  const ApertureShape& shape() const { return shape_; }
  double center_x() const { return cx_; }
  double center_y() const { return cy_; }
  std::optional<double> pump_waist() const { return pump_waist_; }
  bool is_point() const { return std::holds_alternative<PointShape>(shape_); }

  cplx value_at(double x, double y) const;

  // Pixel-centre sampling. A point aperture sets the nearest sample to 1.
  FieldGrid rasterize(const GridSpec& grid, Exec exec = Exec::Parallel) const;

 private:
  ApertureShape shape_ = PointShape{};
  double cx_ = 0.0;
  double cy_ = 0.0;
  std::optional<double> pump_waist_;
};

}  // namespace ocm
