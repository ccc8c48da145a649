#pragma once

#include <charconv>
#include <initializer_list>
#include <string>
#include <string_view>

namespace fminlab {

// Shortest round-trip decimal form; locale independent.
inline std::string csv_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string csv_join(std::initializer_list<std::string_view> fields) {
  std::string out;
  bool first = true;
  for (auto f : fields) {
    if (!first) out += ',';
    out += f;
    first = false;
  }
  return out;
}

inline std::string csv_join(std::initializer_list<double> values) {
  std::string out;
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += csv_number(v);
    first = false;
  }
  return out;
}

}  // namespace fminlab
