#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>

#include "maxcov/point.hpp"
#include "maxcov/rational.hpp"

namespace maxcov {

/// Element of the ring of smooth functions, exact backend: a sparse polynomial
/// in the four coordinates with rational coefficients. Zero coefficients are
/// never stored and exponent tuples are unique, so equality is structural.
class Polynomial {
public:
  using Exponents = std::array<std::uint8_t, 4>;
  using value_type = Rational;
  using TermMap = std::map<Exponents, Rational>;

  Polynomial() = default;

  static Polynomial zero() { return Polynomial(); }
  static Polynomial constant(const Rational& c) {
    Polynomial p;
    p.add_term(Exponents{0, 0, 0, 0}, c);
    return p;
  }
  static Polynomial one() { return constant(Rational::one()); }

  /// The coordinate function x^axis.
  static Polynomial coordinate(int axis) {
    Polynomial p;
    Exponents e{0, 0, 0, 0};
    e[static_cast<std::size_t>(axis)] = 1;
    p.add_term(e, Rational::one());
    return p;
  }

  static Polynomial monomial(const Exponents& e, const Rational& c) {
    Polynomial p;
    p.add_term(e, c);
    return p;
  }

  void add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool is_structural_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  Polynomial operator-() const {
    Polynomial r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e;
        for (int i = 0; i < 4; ++i)
          e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(
              ea[static_cast<std::size_t>(i)] + eb[static_cast<std::size_t>(i)]);
        r.add_term(e, ca * cb);
      }
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Rational& c) const {
    Polynomial r;
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
  }

  Polynomial partial(int axis) const {
    const auto a = static_cast<std::size_t>(axis);
    Polynomial r;
    for (const auto& [e, c] : terms_) {
      if (e[a] == 0) continue;
      Exponents de = e;
      --de[a];
      r.add_term(de, c * Rational(e[a]));
    }
    return r;
  }

  Rational value(const Point& p) const { return eval_generic<Rational>(p.coords); }

  /// Floating-point evaluation at non-rational (quadrature) points.
  double value_d(const std::array<double, 4>& x) const { return eval_on(x); }

  /// Evaluates on any commutative ring element (doubles, jets) with the
  /// coefficients converted through double.
  template <class T>
  T eval_on(const std::array<T, 4>& x) const {
    T acc{};
    for (const auto& [e, c] : terms_) {
      T term = T(c.to_double());
      for (std::size_t i = 0; i < 4; ++i)
        for (std::uint8_t k = 0; k < e[i]; ++k) term = term * x[i];
      acc += term;
    }
    return acc;
  }

  /// Substitutes x_i -> subs[i]; exact. Used by affine pullbacks, where the
  /// substituted polynomials are degree one.
  Polynomial compose(const std::array<Polynomial, 4>& subs) const {
    Polynomial acc;
    for (const auto& [e, c] : terms_) {
      Polynomial term = constant(c);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::uint8_t k = 0; k < e[i]; ++k) term *= subs[i];
      acc += term;
    }
    return acc;
  }

  /// Precomposes with x -> Mx + c.
  Polynomial compose_affine(const std::array<std::array<Rational, 4>, 4>& linear,
                            const std::array<Rational, 4>& offset) const {
    std::array<Polynomial, 4> subs;
    for (std::size_t i = 0; i < 4; ++i) {
      subs[i] = constant(offset[i]);
      for (std::size_t j = 0; j < 4; ++j)
        subs[i] += coordinate(static_cast<int>(j)).scaled(linear[i][j]);
    }
    return compose(subs);
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }

private:
  template <class T>
  T eval_generic(const std::array<Rational, 4>& x) const {
    T acc = T();
    for (const auto& [e, c] : terms_) {
      T term = c;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::uint8_t k = 0; k < e[i]; ++k) term *= x[i];
      acc += term;
    }
    return acc;
  }

  TermMap terms_;
};

}  // namespace maxcov
