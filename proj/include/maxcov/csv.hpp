#pragma once

#include <array>
#include <charconv>
#include <ostream>
#include <string>
#include <vector>

#include "maxcov/point.hpp"

namespace maxcov {

inline constexpr const char* kCsvHeader = "frame,point_index,t,x,y,z,quantity,component,value";

/// One output record. `checked` rows participate in the exit-code decision;
/// `ok` says whether this row passed its tolerance.
struct CsvRow {
  int frame = 0;
  int point_index = 0;
  std::array<std::string, 4> coords{"0/1", "0/1", "0/1", "0/1"};
  std::string quantity;
  std::string component;
  std::string value;
  bool checked = false;
  bool ok = true;
};

/// Shortest round-trip decimal; locale-independent; negative zero collapses
/// to "0" so reruns are byte-identical across code paths.
inline std::string format_double(double v) {
  if (v == 0.0) v = 0.0;
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

inline std::array<std::string, 4> format_point(const Point& p) {
  return {p[0].str(), p[1].str(), p[2].str(), p[3].str()};
}

inline void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.frame << ',' << r.point_index << ',' << r.coords[0] << ',' << r.coords[1] << ','
        << r.coords[2] << ',' << r.coords[3] << ',' << r.quantity << ',' << r.component << ','
        << r.value << "\n";
  }
}

}  // namespace maxcov
