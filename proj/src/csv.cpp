#include "spibox/csv.hpp"

#include "spibox/error.hpp"
#include "spibox/text.hpp"

namespace spibox {

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  fail(ErrorKind::parse, "csv: missing column '" + std::string(name) + "'");
}

double CsvTable::number(std::size_t row, std::string_view name) const {
  const std::string& cell = text(row, name);
  const auto v = parse_double(cell);
  // Data rows start on line 2.
  if (!v) fail(ErrorKind::parse, "csv line " + std::to_string(row + 2) + ": '" + cell + "' is not a number");
  return *v;
}

const std::string& CsvTable::text(std::size_t row, std::string_view name) const {
  return rows.at(row).at(column(name));
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += fields[i];
    }
    out += '\n';
  };
  emit(table.header);
  for (const auto& r : table.rows) emit(r);
  return out;
}

CsvTable parse_csv(std::string_view text) {
  auto lines = split(text, '\n');
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) fail(ErrorKind::empty_input, "csv: input is empty");
  CsvTable t;
  for (std::string_view f : split(trim(lines[0]), ',')) t.header.emplace_back(trim(f));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string_view line = trim(lines[i]);
    if (line.empty()) fail(ErrorKind::parse, "csv line " + std::to_string(i + 1) + ": blank line");
    std::vector<std::string> row;
    for (std::string_view f : split(line, ',')) row.emplace_back(trim(f));
    if (row.size() != t.header.size()) {
      fail(ErrorKind::parse, "csv line " + std::to_string(i + 1) + ": expected " +
                                 std::to_string(t.header.size()) + " fields, got " + std::to_string(row.size()));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
  try {
    return parse_csv(read_file(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) { write_file(path, to_csv(table)); }

}  // namespace spibox
