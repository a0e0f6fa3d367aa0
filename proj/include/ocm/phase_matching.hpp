#pragma once

#include <array>

#include "ocm/aperture.hpp"
#include "ocm/centroid.hpp"
#include "ocm/field_grid.hpp"

namespace ocm {

// n^2 = A + B/(1 - C/l^2) + D/(1 - E/l^2) - F l^2 with l in micrometres, plus a thermal
// correction dn = n1 (T - T_ref) + n2 (T - T_ref)^2 where n1, n2 are polynomials in 1/l.
// Defaults are the flux-grown KTP z-axis fit with its published thermo-optic terms.
struct SellmeierModel {
  double A = 2.12725;
  double B = 1.18431;
  double C = 5.14852e-2;
  double D = 0.6603;
  double E = 100.00507;
  double F = 9.68956e-3;
  std::array<double, 4> thermal_linear{9.9587e-6, 9.9228e-6, -8.9603e-6, 4.1010e-6};
  std::array<double, 4> thermal_quadratic{-1.1882e-8, 10.459e-8, -9.8136e-8, 3.1481e-8};
  double reference_temperature_c = 25.0;
  double temperature_c = 25.0;

  double index_at_wavelength(double wavelength_m) const;
  double index_at_omega(double omega) const;
};

struct PhaseMatchingParams {
  double crystal_length = 5e-3;
  double poling_period = 0.0;
  double omega_s = 0.0;
  double omega_i = 0.0;
  SellmeierModel index_model{};
  double focal_length = 0.05;

  double omega_p() const { return omega_s + omega_i; }
  void validate() const;

  // Degenerate pair at the given signal wavelength with the poling period solved for collinear phase matching.
  static PhaseMatchingParams degenerate(double wavelength, double crystal_length, double focal_length,
                                        const SellmeierModel& model = {});
};

double wavenumber(double omega, const SellmeierModel& m);

// Poling period that zeroes the collinear mismatch.
double solve_poling_period(const PhaseMatchingParams& p);

// Paraxial-free mismatch with transverse wavevectors of signal and idler (rad/m).
double wavevector_mismatch(Point2 q_s, Point2 q_i, const PhaseMatchingParams& p);

// Transverse wavevector of a photon at lens-plane position rho: (omega / (c f)) rho.
Point2 lens_wavevector(Point2 rho, double omega, double focal_length);

// A(-(w_s rho_s + w_i rho_i)/(w_s + w_i)) * sinc(dk L / 2).
cplx biphoton_amplitude(Point2 rho_s, Point2 rho_i, const Aperture& a, const PhaseMatchingParams& p);

// sinc(dk L / 2) with the centroid pinned at zero and rho_{s,i} = +/- xi.
double phase_matching_envelope(Point2 xi, const PhaseMatchingParams& p);

// |envelope|^2 over a grid of xi.
FieldGrid phase_matching_envelope_grid(const PhaseMatchingParams& p, const GridSpec& xi_grid);

// FWHM of |envelope|^2 along xi_x.
double phase_matching_fwhm(const PhaseMatchingParams& p);

}  // namespace ocm
