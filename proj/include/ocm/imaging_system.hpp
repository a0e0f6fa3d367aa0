#pragma once

#include <variant>

namespace ocm {

struct HardCircularPupil {};

// Gaussian pupil transmission exp(-r^2 / (2 std_dev^2)) in the lens plane.
struct GaussianPupil {
  double std_dev = 0.0;
};

using PupilProfile = std::variant<HardCircularPupil, GaussianPupil>;

struct ImagingSystem {
  double pupil_radius = 1.38e-3;
  double object_distance = 0.355;
  double wavelength = 810e-9;
  double magnification = 2.4;
  PupilProfile pupil = HardCircularPupil{};

  void validate() const;
  bool gaussian() const { return std::holds_alternative<GaussianPupil>(pupil); }

  // Argument scale of the amplitude PSF: h = somb(scale * |rho|).
  double somb_scale() const;
  // Textbook 1.22 lambda s_o / (2R) estimate, for display.
  double rayleigh_radius() const;
  // Exact first zero j11 / scale (hard pupil).
  double first_zero_radius() const;
  // Object-plane std of the Gaussian-pupil amplitude PSF: s_o lambda / (2 pi s).
  double gaussian_psf_std() const;
  // Length scale the sampling rules are checked against: first zero or Gaussian std.
  double characteristic_radius() const;

  ImagingSystem with_wavelength(double lambda) const;
};

}  // namespace ocm
