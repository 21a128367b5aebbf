#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace spibox {

/// Minimal comma-separated table: one header row, no quoting. Fields may not
/// contain commas or newlines.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of `name` in the header; throws parse if absent.
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
  const std::string& text(std::size_t row, std::string_view name) const;

  friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

std::string to_csv(const CsvTable& table);

/// Errors name the 1-based line. Empty input raises ErrorKind::empty_input.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

}  // namespace spibox
