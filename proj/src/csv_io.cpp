#include "tailsep/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "tailsep/error.hpp"

namespace tailsep {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  std::string out = s.substr(first, last - first + 1);
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw InputError("empty numeric value");
  double v = 0.0;
  const char* begin = t.data();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) throw InputError("not a number: '" + t + "'");
  return v;
}

std::vector<double> read_csv_column(std::istream& in, const std::string& column) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("csv: missing header");
  const auto header = split(line);
  std::size_t index = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) {
      index = i;
      break;
    }
  }
  if (index == header.size()) {
    const auto [ptr, ec] = std::from_chars(column.data(), column.data() + column.size(), index);
    if (ec != std::errc() || ptr != column.data() + column.size() || index >= header.size()) {
      throw InputError("csv: no column '" + column + "'");
    }
  }

  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (index >= cells.size()) throw InputError("csv: line " + std::to_string(line_no) + " has too few fields");
    try {
      values.push_back(parse_double(cells[index]));
    } catch (const InputError& e) {
      throw InputError("csv: line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (values.empty()) throw InputError("csv: no data rows");
  return values;
}

std::vector<double> read_csv_column_file(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_csv_column(in, column);
}

}  // namespace tailsep
