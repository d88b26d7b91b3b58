#pragma once

#include <cstdint>

#include "maxcov/form.hpp"

namespace maxcov {

/// Fixed Lorentzian signature (+,−,−,−) with orientation dt∧dx∧dy∧dz.
struct MetricSignature {
  std::array<int, 4> signs{+1, -1, -1, -1};
  std::uint8_t orientation = mask::kVolume;

  /// ⟨e_m, e_m⟩_η = product of the diagonal entries over the index set.
  int product(std::uint8_t m) const {
    int g = 1;
    for (int i = 0; i < 4; ++i)
      if (m & (1u << i)) g *= signs[static_cast<std::size_t>(i)];
    return g;
  }
};

inline const MetricSignature& minkowski() {
  static const MetricSignature sig;
  return sig;
}

/// Hodge star from the defining relation a∧⋆b = ⟨a,b⟩_η·vol. For a basis
/// monomial e_m the relation collapses to one equation in one unknown (the
/// complement-mask coefficient): sign(e_m∧e_mᶜ)·c = ⟨e_m,e_m⟩. Solving it here
/// instead of transcribing a sign table keeps the convention mechanical; the
/// test suite checks the relation over every basis pair.
template <class Field>
DifferentialForm<Field> hodge_star(const DifferentialForm<Field>& a) {
  const MetricSignature& sig = minkowski();
  DifferentialForm<Field> r(4 - a.grade());
  for (const auto& [m, f] : a.coeffs()) {
    const std::uint8_t comp = static_cast<std::uint8_t>(mask::kVolume ^ m);
    const int s = mask::wedge_sign(m, comp);
    const int c = sig.product(m) * s;
    r.add_term(comp, f.scaled(Rational(c)));
  }
  return r;
}

}  // namespace maxcov
