#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ocm/centroid.hpp"
#include "ocm/field_grid.hpp"

namespace ocm {

using Rng = std::mt19937_64;

// Child seed for an independent stream; depends only on (master, index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Inverse-CDF sampler over the real part of a non-negative density grid:
// row marginal, then the conditional within the row, then uniform jitter inside the cell.
class DiscreteSampler2D {
 public:
  explicit DiscreteSampler2D(const FieldGrid& density);

  Point2 sample(Rng& rng) const;
  // Cell index only, no jitter.
  std::pair<std::size_t, std::size_t> sample_cell(Rng& rng) const;
  const GridSpec& spec() const { return spec_; }

 private:
  GridSpec spec_;
  std::vector<double> row_cdf_;
  std::vector<double> cell_cdf_;  // per-row cumulative sums, row-major
};

}  // namespace ocm
