#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "ocm/field_grid.hpp"

namespace ocm {

enum class Direction { Forward, Inverse };

// Smallest n' >= n whose only prime factors are 2, 3, 5, 7.
std::size_t next_fast_size(std::size_t n);

// Continuous-transform convention: F(q) = sum f(x) exp(-i q.x) dx dy, inverse carries dq^2/(2 pi)^2.
// Output spacing is 2 pi / (n * spacing); default origin is -floor(n/2) * spacing on each axis.
FieldGrid fourier_transform_2d(const FieldGrid& f, Direction dir,
                               std::optional<std::pair<double, double>> output_origin = std::nullopt);

// Full linear convolution: n = nf + ng - 1 per axis, origin = of + og.
FieldGrid convolve2d(const FieldGrid& f, const FieldGrid& g);

// Convolution sampled on f's grid. g's origin must fall on an integer multiple of the spacing.
FieldGrid convolve2d_same(const FieldGrid& f, const FieldGrid& g);

// n-fold self-convolution of h, sampled on the central window of the full result
// with the same sample count as h. Window starts at index (n-1)(m-1)/2 of the full grid.
FieldGrid self_convolve(const FieldGrid& h, int n);

}  // namespace ocm
