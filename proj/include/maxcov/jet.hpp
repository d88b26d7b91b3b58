#pragma once

#include <array>
#include <cmath>

namespace maxcov {

/// Forward-mode jet carrying a value and its four partial derivatives.
/// Nestable: Jet<Jet<double>> carries second derivatives, and so on.
template <class T>
struct Jet {
  T v{};
  std::array<T, 4> d{};

  Jet() = default;
  Jet(double s) : v(s) {}
  Jet(T value, std::array<T, 4> deriv) : v(std::move(value)), d(std::move(deriv)) {}

  Jet operator-() const { return Jet{-v, {-d[0], -d[1], -d[2], -d[3]}}; }

  Jet& operator+=(const Jet& o) {
    v += o.v;
    for (int i = 0; i < 4; ++i) d[i] += o.d[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v -= o.v;
    for (int i = 0; i < 4; ++i) d[i] -= o.d[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    for (int i = 0; i < 4; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v = v * o.v;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
};

template <class T>
Jet<T> sin(const Jet<T>& x);
template <class T>
Jet<T> cos(const Jet<T>& x);

template <class T>
Jet<T> sin(const Jet<T>& x) {
  using std::cos;
  using std::sin;
  Jet<T> r;
  r.v = sin(x.v);
  const T c = cos(x.v);
  for (int i = 0; i < 4; ++i) r.d[i] = c * x.d[i];
  return r;
}

template <class T>
Jet<T> cos(const Jet<T>& x) {
  using std::cos;
  using std::sin;
  Jet<T> r;
  r.v = cos(x.v);
  const T s = sin(x.v);
  for (int i = 0; i < 4; ++i) r.d[i] = -(s * x.d[i]);
  return r;
}

template <class T>
Jet<T> exp(const Jet<T>& x) {
  using std::exp;
  Jet<T> r;
  r.v = exp(x.v);
  for (int i = 0; i < 4; ++i) r.d[i] = r.v * x.d[i];
  return r;
}

using Jet1 = Jet<double>;
using Jet2 = Jet<Jet1>;
using Jet3 = Jet<Jet2>;

namespace jet_detail {

// Canonical coordinate seeds: at every nesting level the derivative slot of
// coordinate i is the unit direction e_i, so k-fold derivative chains of the
// evaluated jet are the exact mixed partials.
inline std::array<double, 4> seed0(const std::array<double, 4>& p) { return p; }

template <class J>
std::array<Jet<J>, 4> lift_seed(const std::array<J, 4>& lower) {
  std::array<Jet<J>, 4> out;
  for (int i = 0; i < 4; ++i) {
    out[static_cast<std::size_t>(i)].v = lower[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)].d[static_cast<std::size_t>(i)] = J(1.0);
  }
  return out;
}

inline std::array<Jet1, 4> seed1(const std::array<double, 4>& p) { return lift_seed(p); }
inline std::array<Jet2, 4> seed2(const std::array<double, 4>& p) { return lift_seed(seed1(p)); }
inline std::array<Jet3, 4> seed3(const std::array<double, 4>& p) { return lift_seed(seed2(p)); }

}  // namespace jet_detail

}  // namespace maxcov
