#pragma once

#include "gbas/explorer.hpp"
#include "gbas/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace gbas {

/// Shortest decimal string that parses back to the exact double.
std::string format_double(double value);

double parse_double(const std::string& text);

/// Points CSV schema: kind,parent,coord_0..coord_{D-1}. Tree rows carry
/// their parent's index within the accepted rows; all other kinds use -1.
struct PointRow {
    std::string kind;
    Index parent = -1;
    Vector coords;
};

std::string points_csv_header(Index dim);

void write_points_csv(const std::filesystem::path& path, const std::vector<PointRow>& rows,
                      Index dim);

/// Exploration output as points rows: accepted first (insertion order),
/// then rejected.
std::vector<PointRow> to_point_rows(const ExplorationResult& result);

std::vector<PointRow> to_point_rows(const std::vector<Vector>& points, const std::string& kind);

std::vector<PointRow> read_points_csv(const std::filesystem::path& path);

/// One query per line, comma-separated coordinates. Blank lines and
/// lines starting with '#' are skipped.
std::vector<Vector> read_query_file(const std::filesystem::path& path);

/// Plain 8-bit PGM (P2), one byte of gray per cell, row 0 on top.
void write_pgm(const std::filesystem::path& path, Index width, Index height,
               const std::vector<std::uint8_t>& gray);

}  // namespace gbas
