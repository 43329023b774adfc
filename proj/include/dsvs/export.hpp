#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dsvs/field.hpp"

namespace dsvs {

enum class ExportFormat { csv, pgm16, report };
ExportFormat parse_format(std::string_view text);

/// Header "x,y,<quantity>", then one row per valid point in storage order,
/// every number with 17 significant digits.
std::string encode_csv(const FieldGrid& grid);

struct CsvRow {
  double x, y, value;
};
/// Inverse of encode_csv. Throws UsageError on malformed input.
std::vector<CsvRow> parse_csv(const std::string& text);

/// Binary "P5" image, maxval 65535, big-endian samples. Pixel row r holds
/// grid row iy = r. Values are scaled linearly from [0, grid max];
/// masked and negative points map to 0; a grid with max <= 0 is all zero.
std::vector<std::uint8_t> encode_pgm16(const FieldGrid& grid);

/// Sidecar text describing the pgm16 scaling.
std::string pgm16_sidecar(const FieldGrid& grid);

/// Human-readable summary of the grid, "key: value" lines.
std::string grid_report(const FieldGrid& grid);

/// Writes through a temporary file in the same directory and renames it
/// into place.
void write_atomic(const std::filesystem::path& path, const std::string& bytes);
void write_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

/// Writes the grid in the format; pgm16 also writes "<path>.scale.txt".
void export_grid(const FieldGrid& grid, ExportFormat format, const std::filesystem::path& path);

}  // namespace dsvs
