#pragma once

#include <array>

#include "maxcov/form.hpp"

namespace maxcov {

/// x -> Mx + c with exact rational entries. Row i of `linear` is the
/// differential of the i-th output coordinate.
struct AffineMap {
  std::array<std::array<Rational, 4>, 4> linear{};
  std::array<Rational, 4> offset{};

  static AffineMap identity() {
    AffineMap m;
    for (std::size_t i = 0; i < 4; ++i) m.linear[i][i] = Rational::one();
    return m;
  }

  static AffineMap translation(const std::array<Rational, 4>& by) {
    AffineMap m = identity();
    m.offset = by;
    return m;
  }

  Point apply(const Point& p) const {
    Point q;
    for (int i = 0; i < 4; ++i) {
      Rational acc = offset[static_cast<std::size_t>(i)];
      for (int j = 0; j < 4; ++j)
        acc += linear[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * p[j];
      q[i] = acc;
    }
    return q;
  }
};

/// φ*a: coefficients are precomposed with φ and each dx^i is replaced by the
/// constant covector φ*dx^i = Σ_j M_ij dx^j. Works for non-invertible maps
/// (leaf immersions have a zero column).
template <class Field>
DifferentialForm<Field> pullback_affine(const AffineMap& map, const DifferentialForm<Field>& a) {
  std::array<DifferentialForm<Field>, 4> pulled_covector{
      DifferentialForm<Field>(1), DifferentialForm<Field>(1), DifferentialForm<Field>(1),
      DifferentialForm<Field>(1)};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      pulled_covector[i].add_term(static_cast<std::uint8_t>(1u << j),
                                  Field::constant(map.linear[i][j]));

  DifferentialForm<Field> r(a.grade());
  for (const auto& [m, f] : a.coeffs()) {
    DifferentialForm<Field> part =
        DifferentialForm<Field>::scalar(f.compose_affine(map.linear, map.offset));
    for (int i : mask::indices(m)) part = wedge(part, pulled_covector[static_cast<std::size_t>(i)]);
    r += part;
  }
  return r;
}

}  // namespace maxcov
