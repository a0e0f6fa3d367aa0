#pragma once

namespace ocm {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSpeedOfLight = 299792458.0;
// First positive root of J1.
inline constexpr double kBesselJ1FirstZero = 3.8317059702075123156;
// FWHM of a Gaussian in units of its standard deviation.
inline constexpr double kGaussianFwhmPerSigma = 2.3548200450309493820;

double bessel_j1(double x);

// Airy amplitude 2 J1(x)/x, equal to 1 at the origin.
double somb(double x);

// sin(x)/x, equal to 1 at the origin.
double sinc(double x);

}  // namespace ocm
