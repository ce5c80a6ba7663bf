#pragma once

#include <charconv>
#include <string>

namespace tailsep {

// 17 significant digits, '.' decimal separator regardless of locale.
inline std::string format_double(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

// Shortest text that reads back to the same double; used for labels.
inline std::string format_short(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace tailsep
