#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "maxcov/frame.hpp"
#include "maxcov/linalg.hpp"

namespace maxcov {

/// One frame's transversal reading of a 3-form at a point:
/// J evaluated on that frame's spatial basis (X₁⁽μ⁾, X₂⁽μ⁾, X₃⁽μ⁾).
template <class V>
struct TransversalSample3 {
  int frame_label = 0;
  V value = V(0);
};

/// A 3-form's worth of pointwise data in the fiducial frame: the transversal
/// value J(X₁,X₂,X₃) plus the three temporal values i_Γ J on the pairs
/// (X₂,X₃), (X₁,X₃), (X₁,X₂), in that order.
template <class V>
struct Reconstructed3Form {
  V perp_value = V(0);
  std::array<V, 3> par_values{V(0), V(0), V(0)};
};

/// One frame's transversal readings of a 2-form at a point: values on the
/// spatial pairs (X₁,X₂), (X₁,X₃), (X₂,X₃) of that frame.
template <class V>
struct TransversalSample2 {
  int frame_label = 0;
  std::array<V, 3> values{V(0), V(0), V(0)};
};

template <class Field>
std::array<TransversalSample3<typename Field::value_type>, 4> transversal_values(
    const DifferentialForm<Field>& J, const FrameFamily<Field>& family, const Point& p) {
  if (J.grade() != 3) throw std::domain_error("transversal sampling expects a 3-form");
  std::array<TransversalSample3<typename Field::value_type>, 4> out;
  for (int mu = 0; mu < 4; ++mu) {
    const auto& f = family.frame(mu);
    out[static_cast<std::size_t>(mu)] = {
        mu, evaluate(J, {f.spatial_basis(1), f.spatial_basis(2), f.spatial_basis(3)}, p)};
  }
  return out;
}

template <class Field>
std::array<TransversalSample2<typename Field::value_type>, 3> transversal_values_2(
    const DifferentialForm<Field>& F, const FrameFamily<Field>& family, const Point& p) {
  if (F.grade() != 2) throw std::domain_error("transversal sampling expects a 2-form");
  std::array<TransversalSample2<typename Field::value_type>, 3> out;
  for (int mu = 0; mu < 3; ++mu) {
    const auto& f = family.frame(mu);
    out[static_cast<std::size_t>(mu)].frame_label = mu;
    int slot = 0;
    for (int i = 1; i <= 2; ++i)
      for (int j = i + 1; j <= 3; ++j)
        out[static_cast<std::size_t>(mu)].values[static_cast<std::size_t>(slot++)] =
            evaluate(F, {f.spatial_basis(i), f.spatial_basis(j)}, p);
  }
  return out;
}

/// The closed-form reconstruction: with s_μ the four frames' transversal
/// values,
///   perp            = s₀
///   (X₂,X₃) slot    = (1/β)[(1/γ)s₁ − s₀]
///   (X₁,X₃) slot    = (1/β)[−(1/γ)s₂ + s₀]
///   (X₁,X₂) slot    = (1/β)[(1/γ)s₃ − s₀].
/// The frame-2 line really does carry the opposite sign: swapping the boosted
/// axis into evaluation order costs one transposition there. The linear-solve
/// path below is the convention-free cross-check.
template <class V>
Reconstructed3Form<V> reconstruct_3form_printed(const std::array<TransversalSample3<V>, 4>& s,
                                                const Rational& beta, const Rational& gamma) {
  if (beta.is_zero()) throw std::domain_error("degenerate boost");
  const V inv_beta = value_from_rational<V>(beta.inverse());
  const V inv_gamma = value_from_rational<V>(gamma.inverse());
  auto val = [&](int mu) { return s[static_cast<std::size_t>(mu)].value; };

  Reconstructed3Form<V> r;
  r.perp_value = val(0);
  r.par_values[0] = inv_beta * (inv_gamma * val(1) - val(0));
  r.par_values[1] = inv_beta * (val(0) - inv_gamma * val(2));
  r.par_values[2] = inv_beta * (inv_gamma * val(3) - val(0));
  return r;
}

namespace recon_detail {

// Component triples of the coordinate 3-form basis, ordered so slot 0 is the
// spatial triple and slot 1+k pairs Γ with the complement of X_{k+1}.
constexpr std::array<std::array<int, 3>, 4> kTriples{
    {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};

template <class V>
V det3(const std::array<std::array<V, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace recon_detail

/// Oracle path: expands each frame's evaluation multilinearly in the fiducial
/// basis and solves the 4×4 system for {J(X₁,X₂,X₃), J(Γ,·,·)}. Makes no use
/// of the closed-form coefficients.
template <class Field>
Reconstructed3Form<typename Field::value_type> reconstruct_3form_solve(
    const std::array<TransversalSample3<typename Field::value_type>, 4>& s,
    const FrameFamily<Field>& family) {
  using V = typename Field::value_type;
  if (family.beta.is_zero()) throw std::domain_error("degenerate boost");

  std::vector<std::vector<V>> a(4, std::vector<V>(4, V(0)));
  std::vector<V> b(4, V(0));
  for (int mu = 0; mu < 4; ++mu) {
    const auto& f = family.frame(mu);
    for (std::size_t k = 0; k < 4; ++k) {
      std::array<std::array<V, 3>, 3> m;
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
          m[r][c] = value_from_rational<V>(
              f.spatial_vec[r][static_cast<std::size_t>(recon_detail::kTriples[k][c])]);
      a[static_cast<std::size_t>(mu)][k] = recon_detail::det3(m);
    }
    b[static_cast<std::size_t>(mu)] = s[static_cast<std::size_t>(mu)].value;
  }

  const auto x = solve_linear_system<V>(a, b);
  Reconstructed3Form<V> r;
  r.perp_value = x[0];
  r.par_values = {x[1], x[2], x[3]};
  return r;
}

/// 2-form analogue using frames {0,1,2} only: nine transversal readings
/// overdetermine the six components; the solve doubles as a consistency
/// check. Returns the three temporal values i_Γ F(X₁), i_Γ F(X₂), i_Γ F(X₃).
template <class Field>
std::array<typename Field::value_type, 3> reconstruct_2form(
    const std::array<TransversalSample2<typename Field::value_type>, 3>& s,
    const FrameFamily<Field>& family) {
  using V = typename Field::value_type;
  if (family.beta.is_zero()) throw std::domain_error("degenerate boost");

  // Unknown order: (0,1), (0,2), (0,3), (1,2), (1,3), (2,3).
  constexpr std::array<std::array<int, 2>, 6> pairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  std::vector<std::vector<V>> a;
  std::vector<V> b;
  for (int mu = 0; mu < 3; ++mu) {
    const auto& f = family.frame(mu);
    int slot = 0;
    for (int i = 1; i <= 2; ++i)
      for (int j = i + 1; j <= 3; ++j) {
        std::vector<V> row(6, V(0));
        for (std::size_t k = 0; k < 6; ++k) {
          const auto pa = static_cast<std::size_t>(pairs[k][0]);
          const auto pb = static_cast<std::size_t>(pairs[k][1]);
          const auto& vi = f.spatial_vec[static_cast<std::size_t>(i - 1)];
          const auto& vj = f.spatial_vec[static_cast<std::size_t>(j - 1)];
          row[k] = value_from_rational<V>(vi[pa] * vj[pb] - vi[pb] * vj[pa]);
        }
        a.push_back(std::move(row));
        b.push_back(s[static_cast<std::size_t>(mu)].values[static_cast<std::size_t>(slot++)]);
      }
  }

  const auto x = solve_linear_system<V>(a, b);
  return {x[0], x[1], x[2]};
}

}  // namespace maxcov
