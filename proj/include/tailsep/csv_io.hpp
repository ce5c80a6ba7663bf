#pragma once

#include <istream>
#include <string>
#include <vector>

namespace tailsep {

// Headered CSV, comma separated. `column` is matched against header names
// first; otherwise a non-negative integer selects by 0-based position.
// Empty or non-numeric cells raise InputError with the line number.
std::vector<double> read_csv_column(std::istream& in, const std::string& column);
std::vector<double> read_csv_column_file(const std::string& path, const std::string& column);

// Strict double parse ('.' decimal separator, surrounding blanks allowed).
double parse_double(const std::string& text);

}  // namespace tailsep
