#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "maxcov/form.hpp"
#include "maxcov/linalg.hpp"
#include "maxcov/pullback.hpp"

namespace maxcov {
namespace frame_detail {

inline Rational dot(const std::array<Rational, 4>& covec, const std::array<Rational, 4>& vec) {
  Rational acc;
  for (std::size_t i = 0; i < 4; ++i) acc += covec[i] * vec[i];
  return acc;
}

/// Newton square root truncated to a fixed denominator. Used only when γ is
/// irrational (non-Pythagorean β); then every frame identity holds to ~1e−60
/// instead of exactly, far below the numeric backend's 1e−9 tolerances.
inline Rational approx_sqrt(const Rational& v) {
  using boost::multiprecision::cpp_int;
  const cpp_int scale = boost::multiprecision::pow(cpp_int(10), 60);
  Rational x(Rational::rep_type(boost::multiprecision::sqrt(
                                    numerator(v.rep()) * scale * scale / denominator(v.rep())),
                                scale));
  const Rational half(1, 2);
  for (int iter = 0; iter < 4; ++iter) {
    x = (x + v / x) * half;
    // Round to denominator 10^60 so numerator sizes stay bounded.
    const cpp_int num = numerator(x.rep()) * scale / denominator(x.rep());
    x = Rational(Rational::rep_type(num, scale));
  }
  return x;
}

inline Rational gamma_for(const Rational& beta) {
  const Rational g2 = (Rational::one() - beta * beta).inverse();
  try {
    return g2.sqrt_exact();
  } catch (const std::domain_error&) {
    return approx_sqrt(g2);
  }
}

}  // namespace frame_detail

/// Inertial frame: unit observer field Γ, closed time covector θ with
/// θ(Γ) = 1, and a spatial basis spanning Ker θ. All components constant.
template <class Field>
struct ReferenceFrame {
  int label = 0;
  std::array<Rational, 4> gamma_vec{};
  std::array<Rational, 4> theta_vec{};
  std::array<std::array<Rational, 4>, 3> spatial_vec{};

  VectorField<Field> gamma_field() const { return VectorField<Field>::constant(gamma_vec); }
  VectorField<Field> spatial_basis(int j) const {
    return VectorField<Field>::constant(spatial_vec[static_cast<std::size_t>(j - 1)]);
  }
  DifferentialForm<Field> theta() const {
    DifferentialForm<Field> th(1);
    for (std::size_t i = 0; i < 4; ++i)
      th.add_term(static_cast<std::uint8_t>(1u << i), Field::constant(theta_vec[i]));
    return th;
  }

  Rational theta_applied(const std::array<Rational, 4>& vec) const {
    return frame_detail::dot(theta_vec, vec);
  }
};

template <class Field>
ReferenceFrame<Field> make_fiducial_frame() {
  ReferenceFrame<Field> f;
  f.label = 0;
  f.gamma_vec = {Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()};
  f.theta_vec = {Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()};
  for (std::size_t j = 0; j < 3; ++j) f.spatial_vec[j][j + 1] = Rational::one();
  return f;
}

/// Boost of `base` along its spatial axis j ∈ {1,2,3}:
///   Γ' = γΓ + βγX_j,  X'_j = βγΓ + γX_j,  X'_k = X_k (k ≠ j).
/// θ' is not transcribed from the coordinate transformation; it is solved
/// from θ'(Γ') = 1, θ'(X'_k) = 0, which pins the covector picture to the
/// vector picture with no room for sign drift.
template <class Field>
ReferenceFrame<Field> make_boost_frame(const ReferenceFrame<Field>& base, int axis,
                                       const Rational& beta) {
  if (!(Rational::zero() < beta && beta < Rational::one()))
    throw std::domain_error("non-timelike boost");
  if (axis < 1 || axis > 3) throw std::domain_error("boost axis outside {1,2,3}");

  const Rational gamma = frame_detail::gamma_for(beta);
  const Rational beta_gamma = beta * gamma;
  const auto& g = base.gamma_vec;
  const auto& xj = base.spatial_vec[static_cast<std::size_t>(axis - 1)];

  ReferenceFrame<Field> f;
  f.label = axis;
  for (std::size_t i = 0; i < 4; ++i) {
    f.gamma_vec[i] = gamma * g[i] + beta_gamma * xj[i];
  }
  for (int k = 1; k <= 3; ++k) {
    auto& dst = f.spatial_vec[static_cast<std::size_t>(k - 1)];
    const auto& src = base.spatial_vec[static_cast<std::size_t>(k - 1)];
    if (k == axis) {
      for (std::size_t i = 0; i < 4; ++i) dst[i] = beta_gamma * g[i] + gamma * src[i];
    } else {
      dst = src;
    }
  }

  // Dual-basis solve for θ'.
  std::vector<std::vector<Rational>> rows(4, std::vector<Rational>(4));
  std::vector<Rational> rhs(4, Rational::zero());
  for (std::size_t c = 0; c < 4; ++c) rows[0][c] = f.gamma_vec[c];
  rhs[0] = Rational::one();
  for (std::size_t r = 1; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) rows[r][c] = f.spatial_vec[r - 1][c];
  const auto theta = solve_linear_system<Rational>(rows, rhs);
  for (std::size_t i = 0; i < 4; ++i) f.theta_vec[i] = theta[i];
  return f;
}

/// Fiducial frame plus one boost along each spatial axis, all sharing β.
template <class Field>
struct FrameFamily {
  Rational beta;
  Rational gamma;
  std::array<ReferenceFrame<Field>, 4> frames;

  const ReferenceFrame<Field>& frame(int mu) const {
    return frames.at(static_cast<std::size_t>(mu));
  }
};

template <class Field>
FrameFamily<Field> make_frame_family(const Rational& beta) {
  FrameFamily<Field> fam;
  fam.beta = beta;
  const ReferenceFrame<Field> fid = make_fiducial_frame<Field>();
  fam.frames[0] = fid;
  for (int j = 1; j <= 3; ++j)
    fam.frames[static_cast<std::size_t>(j)] = make_boost_frame(fid, j, beta);
  fam.gamma = frame_detail::gamma_for(beta);
  return fam;
}

/// ω = ω_⊥ + ω_∥ with ω_⊥ = i_Γ(θ∧ω), ω_∥ = θ∧i_Γω. Grade 0 is purely
/// transversal; grade 4 is purely temporal (θ∧ω would leave the algebra, and
/// i_Γ(θ∧ω) = 0 there).
template <class Field>
std::pair<DifferentialForm<Field>, DifferentialForm<Field>> decompose(
    const ReferenceFrame<Field>& f, const DifferentialForm<Field>& a) {
  if (a.grade() == 0) return {a, DifferentialForm<Field>::zero(0)};
  if (a.grade() == 4)
    return {DifferentialForm<Field>::zero(4),
            wedge(f.theta(), interior_product(f.gamma_field(), a))};
  const auto gamma = f.gamma_field();
  const auto theta = f.theta();
  return {interior_product(gamma, wedge(theta, a)), wedge(theta, interior_product(gamma, a))};
}

/// d_⊥ω = i_Γ(θ∧dω); the frame's spatial exterior derivative. For grade ≥ 3
/// the wedge θ∧dω has no room left, so the result is the zero form.
template <class Field>
DifferentialForm<Field> d_perp(const ReferenceFrame<Field>& f, const DifferentialForm<Field>& a) {
  if (a.grade() >= 3) return DifferentialForm<Field>::zero(4);
  return interior_product(f.gamma_field(), wedge(f.theta(), exterior_derivative(a)));
}

/// Pullback along the leaf immersion (y¹,y²,y³) ↦ tΓ + Σ y^b X_b. The result
/// lives in leaf coordinates, indices {1,2,3}; θ pulls back to zero.
template <class Field>
AffineMap leaf_immersion(const ReferenceFrame<Field>& f, const Rational& t) {
  AffineMap map;
  for (std::size_t i = 0; i < 4; ++i) {
    map.offset[i] = t * f.gamma_vec[i];
    for (std::size_t b = 0; b < 3; ++b) map.linear[i][b + 1] = f.spatial_vec[b][i];
  }
  return map;
}

template <class Field>
DifferentialForm<Field> leaf_pullback(const ReferenceFrame<Field>& f, const Rational& t,
                                      const DifferentialForm<Field>& a) {
  return pullback_affine(leaf_immersion(f, t), a);
}

}  // namespace maxcov
