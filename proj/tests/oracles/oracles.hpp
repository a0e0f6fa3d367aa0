#pragma once

// Independent reference implementations used only by tests. Deliberately slow and direct.

#include <cstdint>
#include <functional>
#include <vector>

#include "ocm/centroid.hpp"
#include "ocm/field_grid.hpp"

namespace oracle {

using ocm::cplx;
using ocm::FieldGrid;
using ocm::GridSpec;

// J1 from Bessel's integral (1/pi) * int_0^pi cos(t - x sin t) dt; the trapezoid rule on a
// periodic integrand converges geometrically.
double bessel_j1(double x, int nodes = 400);
double somb(double x);

// Nested-loop full linear convolution with the library's grid convention
// (n = nf + ng - 1, origin = of + og, weight dx * dy).
FieldGrid convolve_full(const FieldGrid& f, const FieldGrid& g);

// Sum over every sample of f(x) exp(-i (qx x + qy y)) dx dy at one wavevector.
cplx dft_at(const FieldGrid& f, double qx, double qy);

// Direct lattice quadrature of the N-photon correlation
//   G(x_1..x_N) = | sum_{r_1..r_N} A((r_1 + .. + r_N) / N) prod_k h(x_k - r_k) d^2N |^2
// with every r_k on the lattice d * Z^2. A is given on the sub-lattice of spacing d / N:
// amplitude(s) for integer s = r_1/d + .. + r_N/d, zero outside [s0, s0 + n)^2.
// Each r_k is restricted to a window of `half_window` lattice steps around x_k.
struct LatticeAperture {
  int s0x = 0, s0y = 0;
  int n = 16;
  std::vector<cplx> values;  // row-major n x n
  cplx at(int sx, int sy) const;
};

double correlation_quadrature(const LatticeAperture& a, const std::vector<ocm::Point2>& positions, double d,
                              const std::function<double(double, double)>& h, int half_window);

// Upper tail probability of a chi-square statistic.
double chi_square_sf(double statistic, double dof);

// Kolmogorov-Smirnov distance between a sampled 1-D CDF and a reference CDF.
double ks_distance(const std::vector<double>& x, const std::vector<double>& cdf,
                   const std::function<double(double)>& reference);

}  // namespace oracle
