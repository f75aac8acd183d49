#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dplab {

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Shortest scientific representation that parses back to the same double.
std::string format_double(double x);

std::string to_csv_string(const CsvTable& table);
void write_csv(const std::string& path, const CsvTable& table);
CsvTable parse_csv(std::string_view text);

}  // namespace dplab
