#include "ocm/grid_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "ocm/binary_io.hpp"
#include "ocm/error.hpp"

namespace ocm {

void write_grid(std::ostream& os, const FieldGrid& g) {
  const auto& s = g.spec();
  os.write("OCMG", 4);
  le::put<std::uint16_t>(os, kGridFormatVersion);
  le::put<std::uint32_t>(os, static_cast<std::uint32_t>(s.nx));
  le::put<std::uint32_t>(os, static_cast<std::uint32_t>(s.ny));
  le::put<double>(os, s.dx);
  le::put<double>(os, s.dy);
  le::put<double>(os, s.origin_x);
  le::put<double>(os, s.origin_y);
  le::put<std::uint8_t>(os, static_cast<std::uint8_t>(g.kind()));
  const bool cplx_kind = g.kind() == FieldKind::Complex;
  for (const auto& v : g.values()) {
    le::put<double>(os, v.real());
    if (cplx_kind) le::put<double>(os, v.imag());
  }
}

FieldGrid read_grid(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::string(magic, 4) != "OCMG") fail(ErrorCode::FormatError, "missing OCMG magic");
  const auto version = le::get<std::uint16_t>(is);
  if (version != kGridFormatVersion) fail(ErrorCode::FormatError, "unsupported OCMG version " + std::to_string(version));
  GridSpec s;
  s.nx = le::get<std::uint32_t>(is);
  s.ny = le::get<std::uint32_t>(is);
  s.dx = le::get<double>(is);
  s.dy = le::get<double>(is);
  s.origin_x = le::get<double>(is);
  s.origin_y = le::get<double>(is);
  const auto kind_byte = le::get<std::uint8_t>(is);
  if (kind_byte > 1) fail(ErrorCode::FormatError, "invalid OCMG value kind");
  const auto kind = static_cast<FieldKind>(kind_byte);
  std::vector<cplx> values(s.size());
  for (auto& v : values) {
    const double re = le::get<double>(is);
    const double im = kind == FieldKind::Complex ? le::get<double>(is) : 0.0;
    v = cplx(re, im);
  }
  return FieldGrid(s, std::move(values), kind);
}

void save_grid(const std::string& path, const FieldGrid& g) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::SinkWriteError, "cannot open " + path);
  write_grid(os, g);
  if (!os) fail(ErrorCode::SinkWriteError, "write failed: " + path);
}

FieldGrid load_grid(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::FormatError, "cannot open " + path);
  return read_grid(is);
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_grid_csv(std::ostream& os, const FieldGrid& g) {
  const auto& s = g.spec();
  const bool c = g.kind() == FieldKind::Complex;
  os << "# nx=" << s.nx << " ny=" << s.ny << "\n";
  os << "# dx=" << fmt17(s.dx) << " dy=" << fmt17(s.dy) << "\n";
  os << "# origin_x=" << fmt17(s.origin_x) << " origin_y=" << fmt17(s.origin_y) << "\n";
  os << "# kind=" << (c ? "complex" : "real") << "\n";
  os << (c ? "x_m,y_m,re,im\n" : "x_m,y_m,value\n");
  for (std::size_t j = 0; j < s.ny; ++j)
    for (std::size_t i = 0; i < s.nx; ++i) {
      const auto& v = g(i, j);
      os << fmt17(s.x(i)) << ',' << fmt17(s.y(j)) << ',' << fmt17(v.real());
      if (c) os << ',' << fmt17(v.imag());
      os << '\n';
    }
}

FieldGrid read_grid_csv(std::istream& is) {
  GridSpec s;
  bool complex_kind = false;
  std::string line;
  std::vector<cplx> values;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string tok;
      while (ls >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const auto key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "nx") s.nx = std::stoul(val);
        else if (key == "ny") s.ny = std::stoul(val);
        else if (key == "dx") s.dx = std::stod(val);
        else if (key == "dy") s.dy = std::stod(val);
        else if (key == "origin_x") s.origin_x = std::stod(val);
        else if (key == "origin_y") s.origin_y = std::stod(val);
        else if (key == "kind") complex_kind = (val == "complex");
      }
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::istringstream ls(line);
    std::string field;
    std::vector<double> cols;
    while (std::getline(ls, field, ',')) cols.push_back(std::stod(field));
    if (cols.size() != (complex_kind ? 4u : 3u)) fail(ErrorCode::FormatError, "bad CSV row: " + line);
    values.emplace_back(cols[2], complex_kind ? cols[3] : 0.0);
  }
  if (values.size() != s.size()) fail(ErrorCode::FormatError, "CSV sample count does not match header");
  return FieldGrid(s, std::move(values), complex_kind ? FieldKind::Complex : FieldKind::Real);
}

void save_grid_csv(const std::string& path, const FieldGrid& g) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::SinkWriteError, "cannot open " + path);
  write_grid_csv(os, g);
  if (!os) fail(ErrorCode::SinkWriteError, "write failed: " + path);
}

}  // namespace ocm
