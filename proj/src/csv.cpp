#include "dplab/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace dplab {

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::scientific);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), ptr);
}

std::string to_csv_string(const CsvTable& table) {
  if (table.columns.empty()) throw std::invalid_argument("refusing to write a CSV without columns");
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw std::invalid_argument("CSV row width does not match header");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const CsvTable& table) {
  const std::string text = to_csv_string(table);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  bool header = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty()) continue;
    std::vector<double> row;
    while (true) {
      const auto comma = line.find(',');
      const std::string_view cell = line.substr(0, comma);
      if (header) {
        table.columns.emplace_back(cell);
      } else {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc() || ptr != cell.data() + cell.size())
          throw std::invalid_argument("bad CSV number '" + std::string(cell) + "'");
        row.push_back(v);
      }
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (!header) table.rows.push_back(std::move(row));
    header = false;
  }
  return table;
}

}  // namespace dplab
