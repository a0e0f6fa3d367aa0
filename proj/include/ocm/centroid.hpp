#pragma once

#include <cstddef>
#include <vector>

namespace ocm {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

// N detected positions together with their centroid X = sum(rho)/N and deviations xi_k = rho_k - X.
class CentroidTuple {
 public:
  static CentroidTuple from_positions(std::vector<Point2> positions);
  // Rebuild from centroid and the first N-1 deviations; the last deviation is implied.
  static CentroidTuple from_centroid(Point2 centroid, const std::vector<Point2>& deviations);

  std::size_t n() const { return positions_.size(); }
  const Point2& centroid() const { return centroid_; }
  // xi_1 .. xi_{N-1}.
  const std::vector<Point2>& deviations() const { return deviations_; }
  // xi_N = -sum_{k<N} xi_k.
  Point2 implied_last_deviation() const;
  const std::vector<Point2>& positions() const { return positions_; }

 private:
  std::vector<Point2> positions_;
  Point2 centroid_;
  std::vector<Point2> deviations_;
};

CentroidTuple to_centroid_coords(const std::vector<Point2>& positions);
std::vector<Point2> from_centroid_coords(const CentroidTuple& t);

// |det| of the map (rho_1..rho_N) -> (X, xi_1..xi_{N-1}) in two dimensions.
double centroid_jacobian(int n);

}  // namespace ocm
