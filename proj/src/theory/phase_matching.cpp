#include "ocm/phase_matching.hpp"

#include <cmath>

#include "ocm/error.hpp"
#include "ocm/special.hpp"

namespace ocm {

double SellmeierModel::index_at_wavelength(double wavelength_m) const {
  const double l = wavelength_m * 1e6;
  const double l2 = l * l;
  const double n2 = A + B / (1.0 - C / l2) + D / (1.0 - E / l2) - F * l2;
  if (!(n2 > 0.0)) fail(ErrorCode::InvalidArgument, "refractive-index model is not positive at this wavelength");
  double n1 = 0.0, nq = 0.0, inv = 1.0;
  for (std::size_t m = 0; m < 4; ++m) {
    n1 += thermal_linear[m] * inv;
    nq += thermal_quadratic[m] * inv;
    inv /= l;
  }
  const double dt = temperature_c - reference_temperature_c;
  return std::sqrt(n2) + n1 * dt + nq * dt * dt;
}

double SellmeierModel::index_at_omega(double omega) const { return index_at_wavelength(kTwoPi * kSpeedOfLight / omega); }

double wavenumber(double omega, const SellmeierModel& m) { return omega * m.index_at_omega(omega) / kSpeedOfLight; }

void PhaseMatchingParams::validate() const {
  if (!(crystal_length > 0) || !(focal_length > 0)) fail(ErrorCode::InvalidArgument, "crystal length and focal length must be positive");
  if (!(omega_s > 0) || !(omega_i > 0)) fail(ErrorCode::InvalidArgument, "signal and idler frequencies must be positive");
  if (!(poling_period > 0)) fail(ErrorCode::InvalidArgument, "poling period must be positive");
}

PhaseMatchingParams PhaseMatchingParams::degenerate(double wavelength, double crystal_length, double focal_length,
                                                    const SellmeierModel& model) {
  PhaseMatchingParams p;
  p.crystal_length = crystal_length;
  p.focal_length = focal_length;
  p.omega_s = p.omega_i = kTwoPi * kSpeedOfLight / wavelength;
  p.index_model = model;
  p.poling_period = solve_poling_period(p);
  return p;
}

double solve_poling_period(const PhaseMatchingParams& p) {
  const double mismatch = wavenumber(p.omega_p(), p.index_model) - wavenumber(p.omega_s, p.index_model) -
                          wavenumber(p.omega_i, p.index_model);
  if (!(mismatch > 0.0)) fail(ErrorCode::InvalidArgument, "no positive poling period phase-matches these frequencies");
  return kTwoPi / mismatch;
}

double wavevector_mismatch(Point2 q_s, Point2 q_i, const PhaseMatchingParams& p) {
  p.validate();
  const double ks = wavenumber(p.omega_s, p.index_model);
  const double ki = wavenumber(p.omega_i, p.index_model);
  const double kp = wavenumber(p.omega_p(), p.index_model);
  const double qs2 = q_s.x * q_s.x + q_s.y * q_s.y;
  const double qi2 = q_i.x * q_i.x + q_i.y * q_i.y;
  const double sx = q_s.x + q_i.x, sy = q_s.y + q_i.y;
  const double rs = ks * ks - qs2, ri = ki * ki - qi2, rp = kp * kp - (sx * sx + sy * sy);
  if (!(rs > 0) || !(ri > 0) || !(rp > 0)) fail(ErrorCode::EvanescentInput, "transverse wavevector exceeds the medium wavenumber");
  return std::sqrt(rs) + std::sqrt(ri) - std::sqrt(rp) + kTwoPi / p.poling_period;
}

Point2 lens_wavevector(Point2 rho, double omega, double focal_length) {
  const double s = omega / (kSpeedOfLight * focal_length);
  return {s * rho.x, s * rho.y};
}

cplx biphoton_amplitude(Point2 rho_s, Point2 rho_i, const Aperture& a, const PhaseMatchingParams& p) {
  const double ws = p.omega_s, wi = p.omega_i, wt = ws + wi;
  const Point2 centre{-(ws * rho_s.x + wi * rho_i.x) / wt, -(ws * rho_s.y + wi * rho_i.y) / wt};
  const double dk = wavevector_mismatch(lens_wavevector(rho_s, ws, p.focal_length),
                                        lens_wavevector(rho_i, wi, p.focal_length), p);
  return a.value_at(centre.x, centre.y) * sinc(0.5 * dk * p.crystal_length);
}

double phase_matching_envelope(Point2 xi, const PhaseMatchingParams& p) {
  const double dk = wavevector_mismatch(lens_wavevector(xi, p.omega_s, p.focal_length),
                                        lens_wavevector({-xi.x, -xi.y}, p.omega_i, p.focal_length), p);
  return sinc(0.5 * dk * p.crystal_length);
}

FieldGrid phase_matching_envelope_grid(const PhaseMatchingParams& p, const GridSpec& xi_grid) {
  xi_grid.validate();
  FieldGrid g(xi_grid, FieldKind::Real);
  for (std::size_t j = 0; j < xi_grid.ny; ++j)
    for (std::size_t i = 0; i < xi_grid.nx; ++i) {
      const double e = phase_matching_envelope({xi_grid.x(i), xi_grid.y(j)}, p);
      g(i, j) = e * e;
    }
  return g;
}

double phase_matching_fwhm(const PhaseMatchingParams& p) {
  auto level = [&](double x) {
    const double e = phase_matching_envelope({x, 0.0}, p);
    return e * e - 0.5;
  };
  // Bracket the first half-max crossing by doubling, then bisect.
  double lo = 0.0, hi = 1e-6;
  while (level(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1.0) fail(ErrorCode::InvalidArgument, "phase-matching envelope has no half maximum within 1 m");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (level(mid) > 0.0 ? lo : hi) = mid;
  }
  return lo + hi;
}

}  // namespace ocm
