#pragma once

#include <array>
#include <utility>
#include <vector>

#include "maxcov/frame.hpp"
#include "maxcov/hodge.hpp"
#include "maxcov/reconstruction.hpp"

namespace maxcov {

/// Field content of one scenario: Faraday 2-form F, Ampere 2-form G,
/// four-current 3-form J.
template <class Field>
struct EMFieldState {
  DifferentialForm<Field> F{2};
  DifferentialForm<Field> G{2};
  DifferentialForm<Field> J{3};
};

/// The five quadratic invariants, each a grade-4 form.
template <class Field>
struct InvariantForms {
  DifferentialForm<Field> FF{4};        // F∧F
  DifferentialForm<Field> F_starF{4};   // F∧⋆F
  DifferentialForm<Field> FG{4};        // F∧G
  DifferentialForm<Field> GG{4};        // G∧G
  DifferentialForm<Field> G_starG{4};   // G∧⋆G
};

/// What one frame's observers measure on the leaf at their time t.
template <class Field>
struct FrameFields {
  DifferentialForm<Field> E{1};    // electric field, i_Γ F pulled to the leaf
  DifferentialForm<Field> B{2};    // magnetic induction, F_⊥ pulled to the leaf
  DifferentialForm<Field> D{2};    // electric induction, G_⊥ pulled to the leaf
  DifferentialForm<Field> H{1};    // magnetic field, i_Γ G pulled to the leaf
  DifferentialForm<Field> rho{3};  // charge 3-form, J_⊥ pulled to the leaf
};

template <class Field>
DifferentialForm<Field> faraday_from_potential(const DifferentialForm<Field>& A) {
  if (A.grade() != 1) throw std::domain_error("potential must be a 1-form");
  return exterior_derivative(A);
}

/// (E, B) as spacetime forms: E = i_Γ F, B = F_⊥.
template <class Field>
std::pair<DifferentialForm<Field>, DifferentialForm<Field>> split_faraday(
    const ReferenceFrame<Field>& f, const DifferentialForm<Field>& F) {
  if (F.grade() != 2) throw std::domain_error("Faraday form must be grade 2");
  return {interior_product(f.gamma_field(), F), decompose(f, F).first};
}

template <class Field>
DifferentialForm<Field> constitutive_vacuum(const DifferentialForm<Field>& F) {
  if (F.grade() != 2) throw std::domain_error("Faraday form must be grade 2");
  return hodge_star(F);
}

template <class Field>
FrameFields<Field> frame_fields(const ReferenceFrame<Field>& f, const EMFieldState<Field>& state,
                                const Rational& t) {
  FrameFields<Field> out;
  const auto [E, B] = split_faraday(f, state.F);
  const auto [H, D] = split_faraday(f, state.G);  // same split, G's names differ
  out.E = leaf_pullback(f, t, E);
  out.B = leaf_pullback(f, t, B);
  out.D = leaf_pullback(f, t, D);
  out.H = leaf_pullback(f, t, H);
  out.rho = leaf_pullback(f, t, decompose(f, state.J).first);
  return out;
}

/// The frame's constraint residuals as transversal spacetime 3-forms:
///   magnetic = d_⊥F_⊥,  gauss = d_⊥G_⊥ − J_⊥.
/// Both vanish on every leaf exactly when the frame's integral constraint
/// equations hold. With dθ = 0 these equal the transversal parts of dF and
/// dG − J, which is what makes covariantization work.
template <class Field>
std::pair<DifferentialForm<Field>, DifferentialForm<Field>> constraint_residuals(
    const ReferenceFrame<Field>& f, const EMFieldState<Field>& state) {
  const auto F_perp = decompose(f, state.F).first;
  const auto G_perp = decompose(f, state.G).first;
  const auto J_perp = decompose(f, state.J).first;
  return {d_perp(f, F_perp), d_perp(f, G_perp) - J_perp};
}

/// Reconstructs the full dF and dG − J components at each point from nothing
/// but the four frames' transversal constraint readings. `residuals(mu, p)`
/// must return the pair (magnetic, gauss) of frame-μ transversal values at p.
template <class Field, class Evaluator>
std::vector<std::pair<Reconstructed3Form<typename Field::value_type>,
                      Reconstructed3Form<typename Field::value_type>>>
covariantize(const FrameFamily<Field>& family, Evaluator&& residuals,
             const std::vector<Point>& points) {
  using V = typename Field::value_type;
  std::vector<std::pair<Reconstructed3Form<V>, Reconstructed3Form<V>>> out;
  out.reserve(points.size());
  for (const Point& p : points) {
    std::array<TransversalSample3<V>, 4> mag, gauss;
    for (int mu = 0; mu < 4; ++mu) {
      const auto [m, g] = residuals(mu, p);
      mag[static_cast<std::size_t>(mu)] = {mu, m};
      gauss[static_cast<std::size_t>(mu)] = {mu, g};
    }
    out.emplace_back(reconstruct_3form_solve(mag, family),
                     reconstruct_3form_solve(gauss, family));
  }
  return out;
}

/// Convenience wrapper: computes each frame's residual forms once, then
/// evaluates them on that frame's spatial basis per point.
template <class Field>
std::vector<std::pair<Reconstructed3Form<typename Field::value_type>,
                      Reconstructed3Form<typename Field::value_type>>>
covariantize_state(const FrameFamily<Field>& family, const EMFieldState<Field>& state,
                   const std::vector<Point>& points) {
  using V = typename Field::value_type;
  std::array<std::pair<DifferentialForm<Field>, DifferentialForm<Field>>, 4> residual_forms{
      std::pair{DifferentialForm<Field>(3), DifferentialForm<Field>(3)},
      std::pair{DifferentialForm<Field>(3), DifferentialForm<Field>(3)},
      std::pair{DifferentialForm<Field>(3), DifferentialForm<Field>(3)},
      std::pair{DifferentialForm<Field>(3), DifferentialForm<Field>(3)}};
  for (int mu = 0; mu < 4; ++mu)
    residual_forms[static_cast<std::size_t>(mu)] =
        constraint_residuals(family.frame(mu), state);

  auto eval = [&](int mu, const Point& p) {
    const auto& f = family.frame(mu);
    const std::vector<VectorField<Field>> basis{f.spatial_basis(1), f.spatial_basis(2),
                                                f.spatial_basis(3)};
    const auto& [mag_form, gauss_form] = residual_forms[static_cast<std::size_t>(mu)];
    return std::pair<V, V>{evaluate(mag_form, basis, p), evaluate(gauss_form, basis, p)};
  };
  return covariantize(family, eval, points);
}

template <class Field>
InvariantForms<Field> invariants(const EMFieldState<Field>& state) {
  InvariantForms<Field> inv;
  inv.FF = wedge(state.F, state.F);
  inv.F_starF = wedge(state.F, hodge_star(state.F));
  inv.FG = wedge(state.F, state.G);
  inv.GG = wedge(state.G, state.G);
  inv.G_starG = wedge(state.G, hodge_star(state.G));
  return inv;
}

}  // namespace maxcov
