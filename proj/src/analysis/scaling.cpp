#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <set>

#include "ocm/analysis.hpp"
#include "ocm/error.hpp"

namespace ocm {

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& n_and_fwhm) {
  std::set<double> distinct;
  for (const auto& [n, w] : n_and_fwhm) {
    if (!(n > 0) || !(w > 0)) fail(ErrorCode::InvalidArgument, "photon numbers and widths must be positive");
    distinct.insert(n);
  }
  if (distinct.size() < 3) fail(ErrorCode::DegenerateInput, "scaling fit needs at least three distinct photon numbers");

  // log w = c - alpha log N, ordinary least squares.
  const double m = static_cast<double>(n_and_fwhm.size());
  double sx = 0, sy = 0;
  for (const auto& [n, w] : n_and_fwhm) {
    sx += std::log(n);
    sy += std::log(w);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (const auto& [n, w] : n_and_fwhm) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(w) - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ssr = 0;
  for (const auto& [n, w] : n_and_fwhm) {
    const double r = std::log(w) - (intercept + slope * std::log(n));
    ssr += r * r;
  }
  const double dof = m - 2.0;
  ScalingFit f;
  f.alpha = -slope;
  f.prefactor = std::exp(intercept);
  f.std_error = std::sqrt(ssr / dof / sxx);
  const boost::math::students_t dist(dof);
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  f.ci_low = f.alpha - t * f.std_error;
  f.ci_high = f.alpha + t * f.std_error;
  return f;
}

}  // namespace ocm
