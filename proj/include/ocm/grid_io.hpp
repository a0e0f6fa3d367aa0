#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ocm/field_grid.hpp"

namespace ocm {

inline constexpr std::uint16_t kGridFormatVersion = 1;

void write_grid(std::ostream& os, const FieldGrid& g);
FieldGrid read_grid(std::istream& is);
void save_grid(const std::string& path, const FieldGrid& g);
FieldGrid load_grid(const std::string& path);

// Lossless text export: '#' header lines, then "x,y,re[,im]" per sample in row-major order.
void write_grid_csv(std::ostream& os, const FieldGrid& g);
FieldGrid read_grid_csv(std::istream& is);
void save_grid_csv(const std::string& path, const FieldGrid& g);

}  // namespace ocm
