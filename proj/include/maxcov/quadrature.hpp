#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "maxcov/form.hpp"

namespace maxcov {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre nodes by Newton iteration on P_n; exact for polynomial
/// degree < 2n up to rounding.
inline QuadratureRule gauss_legendre(int n) {
  if (n < 2) throw std::domain_error("quadrature order below 2");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double x = std::cos(M_PI * (static_cast<double>(k) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 =
            ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / static_cast<double>(m);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    rule.nodes[static_cast<std::size_t>(k)] = x;
    rule.weights[static_cast<std::size_t>(k)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

/// Axis-aligned rectangle inside one leaf, in leaf coordinates (indices
/// 1..3). Oriented by du∧dv in the order the axes are given.
struct LeafRectangle {
  int axis_u = 1, axis_v = 2;
  double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
  double fixed_value = 0;  // coordinate on the remaining axis
};

/// Axis-aligned box inside one leaf.
struct LeafBox {
  std::array<double, 3> lo{0, 0, 0};  // coordinates 1..3
  std::array<double, 3> hi{1, 1, 1};
};

namespace quad_detail {

template <class Field>
double coefficient_at(const DifferentialForm<Field>& omega, std::uint8_t m,
                      const std::array<double, 4>& x) {
  auto it = omega.coeffs().find(m);
  return it == omega.coeffs().end() ? 0.0 : it->second.value_d(x);
}

}  // namespace quad_detail

/// ∫∫ ω over the rectangle with orientation du∧dv, tensor-product
/// Gauss-Legendre of order n per axis.
template <class Field>
double flux_integral(const DifferentialForm<Field>& omega, const LeafRectangle& rect, int n = 8) {
  if (omega.grade() != 2) throw std::domain_error("flux integrand must be a 2-form");
  if (rect.axis_u < 1 || rect.axis_u > 3 || rect.axis_v < 1 || rect.axis_v > 3 ||
      rect.axis_u == rect.axis_v || rect.u0 == rect.u1 || rect.v0 == rect.v1)
    throw std::domain_error("degenerate rectangle");

  const int axis_w = 6 - rect.axis_u - rect.axis_v;
  // Component on du∧dv: stored on the sorted mask, sign flips if u > v.
  const std::uint8_t m = static_cast<std::uint8_t>((1u << rect.axis_u) | (1u << rect.axis_v));
  const double orient = rect.axis_u < rect.axis_v ? 1.0 : -1.0;

  const QuadratureRule rule = gauss_legendre(n);
  const double su = 0.5 * (rect.u1 - rect.u0), cu = 0.5 * (rect.u1 + rect.u0);
  const double sv = 0.5 * (rect.v1 - rect.v0), cv = 0.5 * (rect.v1 + rect.v0);

  double acc = 0.0;
  for (std::size_t a = 0; a < rule.nodes.size(); ++a)
    for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
      std::array<double, 4> x{0, 0, 0, 0};
      x[static_cast<std::size_t>(rect.axis_u)] = cu + su * rule.nodes[a];
      x[static_cast<std::size_t>(rect.axis_v)] = cv + sv * rule.nodes[b];
      x[static_cast<std::size_t>(axis_w)] = rect.fixed_value;
      acc += rule.weights[a] * rule.weights[b] * quad_detail::coefficient_at(omega, m, x);
    }
  return acc * su * sv * orient;
}

/// ∫ ω over the box for a grade-3 leaf form (component on dx¹∧dx²∧dx³).
template <class Field>
double volume_integral(const DifferentialForm<Field>& omega, const LeafBox& box, int n = 8) {
  if (omega.grade() != 3) throw std::domain_error("volume integrand must be a 3-form");
  for (int a = 0; a < 3; ++a)
    if (box.lo[static_cast<std::size_t>(a)] == box.hi[static_cast<std::size_t>(a)])
      throw std::domain_error("degenerate box");

  const QuadratureRule rule = gauss_legendre(n);
  std::array<double, 3> s, c;
  for (std::size_t a = 0; a < 3; ++a) {
    s[a] = 0.5 * (box.hi[a] - box.lo[a]);
    c[a] = 0.5 * (box.hi[a] + box.lo[a]);
  }

  const std::uint8_t m = mask::parse("123");
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        std::array<double, 4> x{0, c[0] + s[0] * rule.nodes[i], c[1] + s[1] * rule.nodes[j],
                                c[2] + s[2] * rule.nodes[k]};
        acc += rule.weights[i] * rule.weights[j] * rule.weights[k] *
               quad_detail::coefficient_at(omega, m, x);
      }
  return acc * s[0] * s[1] * s[2];
}

/// Outward-oriented flux through all six faces of the box. Face with outward
/// normal +e_a is oriented by the cyclic pair (e_b, e_c), (a,b,c) cyclic in
/// (1,2,3), so the sum equals ∫ dω over the box by Stokes.
template <class Field>
double box_boundary_flux(const DifferentialForm<Field>& omega, const LeafBox& box, int n = 8) {
  double acc = 0.0;
  for (int a = 1; a <= 3; ++a) {
    const int b = a % 3 + 1;
    const int c = b % 3 + 1;
    LeafRectangle face;
    face.axis_u = b;
    face.axis_v = c;
    face.u0 = box.lo[static_cast<std::size_t>(b - 1)];
    face.u1 = box.hi[static_cast<std::size_t>(b - 1)];
    face.v0 = box.lo[static_cast<std::size_t>(c - 1)];
    face.v1 = box.hi[static_cast<std::size_t>(c - 1)];
    face.fixed_value = box.hi[static_cast<std::size_t>(a - 1)];
    acc += flux_integral(omega, face, n);
    face.fixed_value = box.lo[static_cast<std::size_t>(a - 1)];
    acc -= flux_integral(omega, face, n);
  }
  return acc;
}

}  // namespace maxcov
