#include <boost/math/tools/minima.hpp>
#include <cmath>

#include "ocm/analysis.hpp"
#include "ocm/error.hpp"
#include "ocm/special.hpp"

namespace ocm {
namespace {

// somb(u)^2 = 1/2 at u = kSombHalfPower.
constexpr double kSombHalfPower = 1.616339948310703;

std::size_t argmax(const std::vector<double>& y) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i] > y[k]) k = i;
  return k;
}

std::vector<double> smooth3(const std::vector<double>& y) {
  std::vector<double> s(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1, b = std::min(i + 1, y.size() - 1);
    double acc = 0.0;
    for (std::size_t k = a; k <= b; ++k) acc += y[k];
    s[i] = acc / static_cast<double>(b - a + 1);
  }
  return s;
}

struct Crossings {
  double left, right;
};

Crossings half_max_crossings(const std::vector<double>& x, const std::vector<double>& y, std::size_t peak) {
  const double half = 0.5 * y[peak];
  std::size_t r = peak;
  while (r + 1 < y.size() && y[r + 1] >= half) ++r;
  if (r + 1 >= y.size()) fail(ErrorCode::NoPeak, "profile does not fall to half maximum on the right");
  std::size_t l = peak;
  while (l > 0 && y[l - 1] >= half) --l;
  if (l == 0) fail(ErrorCode::NoPeak, "profile does not fall to half maximum on the left");
  auto cross = [&](std::size_t in, std::size_t out) {
    return x[in] + (y[in] - half) / (y[in] - y[out]) * (x[out] - x[in]);
  };
  return {cross(l, l - 1), cross(r, r + 1)};
}

// Separate lobes above half maximum, counted as runs.
int lobes_above_half(const std::vector<double>& y) {
  const double half = 0.5 * y[argmax(y)];
  int runs = 0;
  bool in = false;
  for (double v : y) {
    const bool above = v >= half;
    if (above && !in) ++runs;
    in = above;
  }
  return runs;
}

double peak_centre(const std::vector<double>& x, const std::vector<double>& y, std::size_t k) {
  if (k == 0 || k + 1 >= y.size()) return x[k];
  const double a = y[k - 1], b = y[k], c = y[k + 1];
  const double den = a - 2.0 * b + c;
  if (den >= 0.0) return x[k];
  const double off = 0.5 * (a - c) / den;
  return x[k] + off * 0.5 * (x[k + 1] - x[k - 1]);
}

struct FitResult {
  double scale;
  double residual;
};

// One-parameter shape fit: amplitude solved in closed form, the shape scale by Brent search.
template <typename Shape>
FitResult fit_scale(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& w, double x0,
                    double window, double lo, double hi, Shape shape) {
  auto cost = [&](double s) {
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::fabs(x[i] - x0) > window) continue;
      const double m = shape(x[i] - x0, s);
      sxy += w[i] * m * y[i];
      sxx += w[i] * m * m;
      syy += w[i] * y[i] * y[i];
    }
    return sxx > 0.0 ? syy - sxy * sxy / sxx : syy;
  };
  const auto best = boost::math::tools::brent_find_minima(cost, lo, hi, 52);
  const double s = best.first;
  double sxy = 0.0, sxx = 0.0, sres = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::fabs(x[i] - x0) > window) continue;
    const double m = shape(x[i] - x0, s);
    sxy += w[i] * m * y[i];
    sxx += w[i] * m * m;
  }
  const double amp = sxx > 0.0 ? sxy / sxx : 0.0;
  double peak = 0.0;
  for (double v : y) peak = std::max(peak, v);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::fabs(x[i] - x0) > window) continue;
    const double r = y[i] - amp * shape(x[i] - x0, s);
    sres += r * r;
    ++n;
  }
  return {s, n > 0 && peak > 0.0 ? std::sqrt(sres / static_cast<double>(n)) / peak : 0.0};
}

}  // namespace

const char* to_string(WidthModel m) {
  switch (m) {
    case WidthModel::None: return "none";
    case WidthModel::SombSquared: return "somb2";
    case WidthModel::Gaussian: return "gaussian";
  }
  return "none";
}

WidthModel width_model_from_string(const std::string& s) {
  if (s == "none") return WidthModel::None;
  if (s == "somb2") return WidthModel::SombSquared;
  if (s == "gaussian") return WidthModel::Gaussian;
  fail(ErrorCode::InvalidArgument, "width model must be none, somb2 or gaussian, got '" + s + "'");
}

double crossing_fwhm(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) fail(ErrorCode::InvalidArgument, "profile too short");
  const std::size_t k = argmax(y);
  if (!(y[k] > 0.0)) fail(ErrorCode::NoPeak, "profile has no positive maximum");
  const auto c = half_max_crossings(x, y, k);
  return c.right - c.left;
}

WidthReport width_metrics(const Profile1D& p, WidthModel model) {
  p.validate();
  if (p.size() < 3) fail(ErrorCode::NoPeak, "profile too short");
  const std::vector<double> y = p.has_sigma() ? smooth3(p.values) : p.values;
  const std::size_t k = argmax(y);
  if (!(y[k] > 0.0)) fail(ErrorCode::NoPeak, "profile has no positive maximum");
  if (model == WidthModel::None && lobes_above_half(y) > 1)
    fail(ErrorCode::AmbiguousPeak, "several separated lobes exceed half maximum");

  WidthReport r;
  r.fit_model = model;
  const auto c = half_max_crossings(p.positions, y, k);
  r.fwhm = c.right - c.left;
  r.peak_position = 0.5 * (c.left + c.right);
  if (model == WidthModel::None) return r;

  std::vector<double> w(p.size(), 1.0);
  if (p.has_sigma())
    for (std::size_t i = 0; i < p.size(); ++i) w[i] = p.sigma[i] > 0.0 ? 1.0 / (p.sigma[i] * p.sigma[i]) : 0.0;
  const double x0 = p.has_sigma() ? r.peak_position : peak_centre(p.positions, p.values, argmax(p.values));

  if (model == WidthModel::SombSquared) {
    const double k0 = 2.0 * kSombHalfPower / r.fwhm;
    const double window = 1.25 * kBesselJ1FirstZero / k0;
    const auto f = fit_scale(p.positions, p.values, w, x0, window, 0.5 * k0, 2.0 * k0, [](double dx, double s) {
      const double v = somb(s * dx);
      return v * v;
    });
    r.fit_scale = f.scale;
    r.fit_residual = f.residual;
    r.first_zero = kBesselJ1FirstZero / f.scale;
    if (p.has_sigma()) r.fwhm = 2.0 * kSombHalfPower / f.scale;
  } else {
    const double s0 = r.fwhm / kGaussianFwhmPerSigma;
    const auto f = fit_scale(p.positions, p.values, w, x0, 3.0 * s0, 0.5 * s0, 2.0 * s0,
                             [](double dx, double s) { return std::exp(-0.5 * dx * dx / (s * s)); });
    r.fit_scale = f.scale;
    r.fit_residual = f.residual;
    if (p.has_sigma()) r.fwhm = kGaussianFwhmPerSigma * f.scale;
  }
  r.peak_position = x0;
  return r;
}

}  // namespace ocm
