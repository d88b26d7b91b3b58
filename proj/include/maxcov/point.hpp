#pragma once

#include <array>

#include "maxcov/rational.hpp"

namespace maxcov {

/// Spacetime point in Cartesian coordinates (t, x, y, z), c = 1. Index 0 is time.
/// Coordinates are exact rationals; numeric backends convert on evaluation.
struct Point {
  std::array<Rational, 4> coords{};

  Point() = default;
  Point(Rational t, Rational x, Rational y, Rational z) : coords{t, x, y, z} {}

  const Rational& operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
  Rational& operator[](int i) { return coords[static_cast<std::size_t>(i)]; }

  std::array<double, 4> as_doubles() const {
    return {coords[0].to_double(), coords[1].to_double(), coords[2].to_double(),
            coords[3].to_double()};
  }

  friend bool operator==(const Point& a, const Point& b) { return a.coords == b.coords; }
};

inline Point origin() { return Point(); }

}  // namespace maxcov
