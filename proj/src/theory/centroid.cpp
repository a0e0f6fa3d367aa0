#include "ocm/centroid.hpp"

#include "ocm/error.hpp"

namespace ocm {

CentroidTuple CentroidTuple::from_positions(std::vector<Point2> positions) {
  if (positions.empty()) fail(ErrorCode::EmptyInput, "centroid of zero photons");
  CentroidTuple t;
  const double n = static_cast<double>(positions.size());
  Point2 sum;
  for (const auto& p : positions) {
    sum.x += p.x;
    sum.y += p.y;
  }
  t.centroid_ = {sum.x / n, sum.y / n};
  for (std::size_t k = 0; k + 1 < positions.size(); ++k)
    t.deviations_.push_back({positions[k].x - t.centroid_.x, positions[k].y - t.centroid_.y});
  t.positions_ = std::move(positions);
  return t;
}

CentroidTuple CentroidTuple::from_centroid(Point2 centroid, const std::vector<Point2>& deviations) {
  std::vector<Point2> pos;
  Point2 last{0.0, 0.0};
  for (const auto& d : deviations) {
    pos.push_back({centroid.x + d.x, centroid.y + d.y});
    last.x -= d.x;
    last.y -= d.y;
  }
  pos.push_back({centroid.x + last.x, centroid.y + last.y});
  CentroidTuple t;
  t.positions_ = std::move(pos);
  t.centroid_ = centroid;
  t.deviations_ = deviations;
  return t;
}

Point2 CentroidTuple::implied_last_deviation() const {
  Point2 s;
  for (const auto& d : deviations_) {
    s.x -= d.x;
    s.y -= d.y;
  }
  return s;
}

CentroidTuple to_centroid_coords(const std::vector<Point2>& positions) { return CentroidTuple::from_positions(positions); }

std::vector<Point2> from_centroid_coords(const CentroidTuple& t) { return t.positions(); }

double centroid_jacobian(int n) {
  if (n < 1) fail(ErrorCode::EmptyInput, "photon count must be >= 1");
  return static_cast<double>(n) * static_cast<double>(n);
}

}  // namespace ocm
