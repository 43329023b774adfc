#include "dsvs/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "dsvs/errors.hpp"

namespace dsvs {

namespace {

double grid_max(const FieldGrid& g) {
  double m = 0.0;
  for (std::size_t i = 0; i < g.values.size(); ++i)
    if (g.mask[i]) m = std::max(m, g.values[i]);
  return m;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("malformed number '" + std::string(s) + "'");
  return v;
}

}  // namespace

ExportFormat parse_format(std::string_view text) {
  if (text == "csv") return ExportFormat::csv;
  if (text == "pgm16") return ExportFormat::pgm16;
  if (text == "report") return ExportFormat::report;
  throw UsageError("unknown format '" + std::string(text) + "' (expected csv, pgm16 or report)");
}

std::string encode_csv(const FieldGrid& grid) {
  std::string out = "x,y," + std::string(quantity_name(grid.quantity)) + "\n";
  char buf[96];
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      if (!grid.valid(ix, iy)) continue;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid.x(ix), grid.y(iy), grid.at(ix, iy));
      out += buf;
    }
  return out;
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,y,", 0) != 0) throw UsageError("csv: missing header");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto a = line.find(','), b = line.find(',', a + 1);
    if (a == std::string::npos || b == std::string::npos) throw UsageError("csv: malformed row '" + line + "'");
    const std::string_view v(line);
    rows.push_back({parse_double(v.substr(0, a)), parse_double(v.substr(a + 1, b - a - 1)), parse_double(v.substr(b + 1))});
  }
  return rows;
}

std::vector<std::uint8_t> encode_pgm16(const FieldGrid& grid) {
  const std::string header = "P5\n" + std::to_string(grid.nx) + " " + std::to_string(grid.ny) + "\n65535\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const double top = grid_max(grid);
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      std::uint16_t px = 0;
      if (top > 0.0 && grid.valid(ix, iy) && grid.at(ix, iy) > 0.0)
        px = static_cast<std::uint16_t>(std::lround(std::min(grid.at(ix, iy) / top, 1.0) * 65535.0));
      out.push_back(static_cast<std::uint8_t>(px >> 8));
      out.push_back(static_cast<std::uint8_t>(px & 0xff));
    }
  return out;
}

std::string pgm16_sidecar(const FieldGrid& grid) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "quantity: %s\nt: %.17g\nwindow: %s\nwidth: %d\nheight: %d\nrow_order: y ascending from %.17g\n"
                "scale_min: 0\nscale_max: %.17g\nmaxval: 65535\nmasked_pixels: %d\n",
                std::string(quantity_name(grid.quantity)).c_str(), grid.t, grid.window.to_string().c_str(), grid.nx,
                grid.ny, grid.window.y0, grid_max(grid), grid.nx * grid.ny - grid.valid_count());
  return buf;
}

std::string grid_report(const FieldGrid& grid) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < grid.values.size(); ++i)
    if (grid.mask[i]) lo = std::min(lo, grid.values[i]), hi = std::max(hi, grid.values[i]);
  char buf[512];
  std::snprintf(buf, sizeof buf, "quantity: %s\nt: %.17g\nwindow: %s\ngrid: %dx%d\nvalid: %d\nmin: %.12g\nmax: %.12g\n",
                std::string(quantity_name(grid.quantity)).c_str(), grid.t, grid.window.to_string().c_str(), grid.nx,
                grid.ny, grid.valid_count(), lo, hi);
  std::string out = buf;
  if (grid.valid_count() > 0) {
    const auto ex = analyze_extrema(grid);
    std::snprintf(buf, sizeof buf, "global_max_at: %.9g %.9g\nlocal_maxima: %zu\n", ex.global_max.x, ex.global_max.y,
                  ex.local_maxima.size());
    out += buf;
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_atomic(const std::filesystem::path& path, const std::string& bytes) {
  write_atomic(path, std::vector<std::uint8_t>(bytes.begin(), bytes.end()));
}

void export_grid(const FieldGrid& grid, ExportFormat format, const std::filesystem::path& path) {
  switch (format) {
    case ExportFormat::csv: write_atomic(path, encode_csv(grid)); break;
    case ExportFormat::pgm16: {
      write_atomic(path, encode_pgm16(grid));
      auto side = path;
      side += ".scale.txt";
      write_atomic(side, pgm16_sidecar(grid));
      break;
    }
    case ExportFormat::report: write_atomic(path, grid_report(grid)); break;
  }
}

}  // namespace dsvs
