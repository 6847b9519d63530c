#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace eulat {

/// Shortest decimal string that round-trips to the same double.
/// Locale-independent ('.' separator), "inf"/"nan" spelled out.
std::string format_double(double x);

/// One CSV cell per value; doubles go through format_double.
struct Cell {
  std::string text;
  Cell(double x);
  Cell(int x);
  Cell(long long x);
  Cell(std::size_t x);
  Cell(const char* s) : text(s) {}
  Cell(std::string s) : text(std::move(s)) {}
};

/// Rows joined with ',' and terminated by '\n'; header first.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<Cell>>& rows);

void write_file(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace eulat
