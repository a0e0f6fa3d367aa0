#include "ocm/special.hpp"

#include <cmath>

namespace ocm {

double bessel_j1(double x) { return ::j1(x); }

double somb(double x) {
  const double ax = std::fabs(x);
  if (ax < 1e-8) return 1.0 - ax * ax / 8.0;
  return 2.0 * ::j1(ax) / ax;
}

double sinc(double x) {
  const double ax = std::fabs(x);
  if (ax < 1e-8) return 1.0 - ax * ax / 6.0;
  return std::sin(ax) / ax;
}

}  // namespace ocm
