#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxcov/point.hpp"
#include "maxcov/rational.hpp"

namespace maxcov {

/// A strictly increasing multi-index over {0,1,2,3} packed as a bitmask:
/// bit i set means dx^i participates. Grade = popcount, volume form = 0b1111.
namespace mask {

constexpr std::uint8_t kVolume = 0b1111;

inline int grade_of(std::uint8_t m) { return std::popcount(m); }

inline std::vector<int> indices(std::uint8_t m) {
  std::vector<int> out;
  for (int i = 0; i < 4; ++i)
    if (m & (1u << i)) out.push_back(i);
  return out;
}

/// Masks of one grade, ordered lexicographically by their index tuples
/// ({0,1} < {0,2} < {0,3} < {1,2} < ...). This is the canonical component
/// order used everywhere output is serialized.
inline std::vector<std::uint8_t> of_grade(int k) {
  std::vector<std::uint8_t> out;
  std::vector<std::pair<std::vector<int>, std::uint8_t>> keyed;
  for (std::uint8_t m = 0; m < 16; ++m)
    if (std::popcount(m) == k) keyed.emplace_back(indices(m), m);
  std::sort(keyed.begin(), keyed.end());
  for (auto& [idx, m] : keyed) out.push_back(m);
  return out;
}

/// Sign of e_A ∧ e_B as (−1)^inversions; 0 when the masks overlap.
inline int wedge_sign(std::uint8_t a, std::uint8_t b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int i = 0; i < 4; ++i) {
    if (!(a & (1u << i))) continue;
    for (int j = 0; j < i; ++j)
      if (b & (1u << j)) ++inversions;
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

/// Sign of dx^i ∧ e_m (i ∉ m): (−1)^{#{j ∈ m : j < i}}.
inline int insert_sign(std::uint8_t m, int i) {
  const std::uint8_t below = static_cast<std::uint8_t>(m & ((1u << i) - 1u));
  return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

/// Sign picked up by i_{∂_i} e_m (i ∈ m): (−1)^{position of i in m}.
inline int remove_sign(std::uint8_t m, int i) { return insert_sign(m, i); }

inline std::string to_string(std::uint8_t m) {
  std::string s;
  for (int i = 0; i < 4; ++i)
    if (m & (1u << i)) s.push_back(static_cast<char>('0' + i));
  return s;
}

/// Parses a multi-index key like "01"; rejects repeats and wrong order so
/// component labels stay canonical.
inline std::uint8_t parse(const std::string& key) {
  std::uint8_t m = 0;
  int prev = -1;
  for (char c : key) {
    if (c < '0' || c > '3')
      throw std::invalid_argument("multi-index \"" + key + "\" has digit outside 0..3");
    const int i = c - '0';
    if (i <= prev)
      throw std::invalid_argument("multi-index \"" + key + "\" is not strictly increasing");
    prev = i;
    m = static_cast<std::uint8_t>(m | (1u << i));
  }
  return m;
}

}  // namespace mask

/// Contravariant field with scalar-field components along (∂_t,∂_x,∂_y,∂_z).
template <class Field>
struct VectorField {
  using value_type = typename Field::value_type;

  std::array<Field, 4> components{Field::zero(), Field::zero(), Field::zero(), Field::zero()};

  static VectorField basis(int axis) {
    VectorField v;
    v.components[static_cast<std::size_t>(axis)] = Field::one();
    return v;
  }
  static VectorField constant(const std::array<Rational, 4>& c) {
    VectorField v;
    for (std::size_t i = 0; i < 4; ++i) v.components[i] = Field::constant(c[i]);
    return v;
  }

  VectorField scaled(const Rational& c) const {
    VectorField v;
    for (std::size_t i = 0; i < 4; ++i) v.components[i] = components[i].scaled(c);
    return v;
  }
  friend VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField v;
    for (std::size_t i = 0; i < 4; ++i) v.components[i] = a.components[i] + b.components[i];
    return v;
  }

  std::array<value_type, 4> value(const Point& p) const {
    return {components[0].value(p), components[1].value(p), components[2].value(p),
            components[3].value(p)};
  }
};

/// Grade-k form: sparse map from multi-index mask to scalar-field coefficient.
/// Structural zeros are never stored; an absent key is a zero coefficient.
template <class Field>
class DifferentialForm {
public:
  using value_type = typename Field::value_type;
  using CoeffMap = std::map<std::uint8_t, Field>;

  explicit DifferentialForm(int grade) : grade_(grade) {
    if (grade < 0 || grade > 4) throw std::domain_error("form grade outside [0,4]");
  }

  static DifferentialForm zero(int grade) { return DifferentialForm(grade); }

  /// f · e_m.
  static DifferentialForm term(std::uint8_t m, Field f) {
    DifferentialForm a(mask::grade_of(m));
    a.add_term(m, std::move(f));
    return a;
  }
  /// The unit basis monomial e_m.
  static DifferentialForm unit(std::uint8_t m) { return term(m, Field::one()); }
  /// A grade-0 form from a scalar field.
  static DifferentialForm scalar(Field f) { return term(0, std::move(f)); }

  int grade() const { return grade_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_structural_zero() const { return coeffs_.empty(); }

  void add_term(std::uint8_t m, const Field& f) {
    if (mask::grade_of(m) != grade_)
      throw std::logic_error("multi-index grade does not match form grade");
    if (f.is_structural_zero()) return;
    auto [it, inserted] = coeffs_.emplace(m, f);
    if (!inserted) {
      it->second += f;
      if (it->second.is_structural_zero()) coeffs_.erase(it);
    }
  }

  /// Zero field when the key is absent.
  Field coefficient(std::uint8_t m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? Field::zero() : it->second;
  }

  DifferentialForm operator-() const {
    DifferentialForm r(grade_);
    for (const auto& [m, f] : coeffs_) r.coeffs_.emplace(m, -f);
    return r;
  }
  DifferentialForm& operator+=(const DifferentialForm& o) {
    if (o.grade_ != grade_) throw std::domain_error("grade mismatch");
    for (const auto& [m, f] : o.coeffs_) add_term(m, f);
    return *this;
  }
  DifferentialForm& operator-=(const DifferentialForm& o) {
    if (o.grade_ != grade_) throw std::domain_error("grade mismatch");
    for (const auto& [m, f] : o.coeffs_) add_term(m, -f);
    return *this;
  }
  friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) {
    return a += b;
  }
  friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) {
    return a -= b;
  }

  DifferentialForm scaled(const Rational& c) const {
    DifferentialForm r(grade_);
    if (c.is_zero()) return r;
    for (const auto& [m, f] : coeffs_) r.add_term(m, f.scaled(c));
    return r;
  }
  /// Multiplies every coefficient by one scalar field.
  DifferentialForm scaled_by(const Field& g) const {
    DifferentialForm r(grade_);
    for (const auto& [m, f] : coeffs_) r.add_term(m, f * g);
    return r;
  }

  /// Exact structural equality; requires the backend to be comparable
  /// (instantiated only for the polynomial backend).
  friend bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
    return a.grade_ == b.grade_ && a.coeffs_ == b.coeffs_;
  }

private:
  int grade_;
  CoeffMap coeffs_;
};

template <class Field>
DifferentialForm<Field> wedge(const DifferentialForm<Field>& a, const DifferentialForm<Field>& b) {
  if (a.grade() + b.grade() > 4) throw std::domain_error("grade exceeds dimension");
  DifferentialForm<Field> r(a.grade() + b.grade());
  for (const auto& [ma, fa] : a.coeffs())
    for (const auto& [mb, fb] : b.coeffs()) {
      const int s = mask::wedge_sign(ma, mb);
      if (s == 0) continue;
      const Field prod = fa * fb;
      r.add_term(static_cast<std::uint8_t>(ma | mb), s > 0 ? prod : -prod);
    }
  return r;
}

/// d of a 4-form is identically zero; returned as a zero 4-form so callers
/// need no grade-5 representation.
template <class Field>
DifferentialForm<Field> exterior_derivative(const DifferentialForm<Field>& a) {
  if (a.grade() == 4) return DifferentialForm<Field>::zero(4);
  DifferentialForm<Field> r(a.grade() + 1);
  for (const auto& [m, f] : a.coeffs())
    for (int i = 0; i < 4; ++i) {
      if (m & (1u << i)) continue;
      Field df = f.partial(i);
      if (df.is_structural_zero()) continue;
      const int s = mask::insert_sign(m, i);
      r.add_term(static_cast<std::uint8_t>(m | (1u << i)), s > 0 ? df : -df);
    }
  return r;
}

template <class Field>
DifferentialForm<Field> interior_product(const VectorField<Field>& v,
                                         const DifferentialForm<Field>& a) {
  if (a.grade() == 0) throw std::domain_error("cannot contract scalar");
  DifferentialForm<Field> r(a.grade() - 1);
  for (const auto& [m, f] : a.coeffs())
    for (int i = 0; i < 4; ++i) {
      if (!(m & (1u << i))) continue;
      const Field& vi = v.components[static_cast<std::size_t>(i)];
      if (vi.is_structural_zero()) continue;
      const int s = mask::remove_sign(m, i);
      const Field prod = vi * f;
      r.add_term(static_cast<std::uint8_t>(m & ~(1u << i)), s > 0 ? prod : -prod);
    }
  return r;
}

/// Cartan formula 𝓛_v = i_v∘d + d∘i_v (the second term is skipped on scalars).
template <class Field>
DifferentialForm<Field> lie_derivative(const VectorField<Field>& v,
                                       const DifferentialForm<Field>& a) {
  DifferentialForm<Field> r = interior_product(v, exterior_derivative(a));
  if (a.grade() > 0) r += exterior_derivative(interior_product(v, a));
  return r;
}

namespace detail {

template <class V>
V det_small(const std::vector<std::vector<V>>& m, std::vector<int> cols, std::size_t row) {
  if (cols.empty()) return V(1);
  V acc = V(0);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::vector<int> rest;
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (j != k) rest.push_back(cols[j]);
    V sub = m[row][static_cast<std::size_t>(cols[k])] * det_small(m, rest, row + 1);
    if (k % 2 == 0)
      acc += sub;
    else
      acc -= sub;
  }
  return acc;
}

}  // namespace detail

/// Antisymmetric multilinear evaluation a(v_1,...,v_k) at p.
template <class Field>
typename Field::value_type evaluate(const DifferentialForm<Field>& a,
                                    const std::vector<VectorField<Field>>& vs, const Point& p) {
  using V = typename Field::value_type;
  if (static_cast<int>(vs.size()) != a.grade())
    throw std::domain_error("evaluation arity mismatch");
  if (a.grade() == 0) return a.coefficient(0).value(p);

  std::vector<std::array<V, 4>> vec_values;
  vec_values.reserve(vs.size());
  for (const auto& v : vs) vec_values.push_back(v.value(p));

  V acc = V(0);
  for (const auto& [m, f] : a.coeffs()) {
    const auto idx = mask::indices(m);
    std::vector<std::vector<V>> mat(idx.size(), std::vector<V>(idx.size(), V(0)));
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c)
        mat[r][c] = vec_values[c][static_cast<std::size_t>(idx[r])];
    std::vector<int> cols(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) cols[j] = static_cast<int>(j);
    acc += f.value(p) * detail::det_small(mat, cols, 0);
  }
  return acc;
}

namespace detail {

inline bool within(const Rational& a, const Rational& b, double tol) {
  if (tol == 0.0) return a == b;
  return (a - b).abs().to_double() <= tol;
}
inline bool within(double a, double b, double tol) {
  const double d = a - b;
  return (d < 0 ? -d : d) <= tol;
}

}  // namespace detail

/// Coefficientwise agreement at every sample point within tol
/// (tol 0 demands exact equality; use it with the polynomial backend).
template <class Field>
bool form_equal_sampled(const DifferentialForm<Field>& a, const DifferentialForm<Field>& b,
                        const std::vector<Point>& points, double tol) {
  if (a.grade() != b.grade()) throw std::domain_error("grade mismatch");
  for (const auto& m : mask::of_grade(a.grade())) {
    const Field fa = a.coefficient(m);
    const Field fb = b.coefficient(m);
    if (fa.is_structural_zero() && fb.is_structural_zero()) continue;
    for (const auto& p : points)
      if (!detail::within(fa.value(p), fb.value(p), tol)) return false;
  }
  return true;
}

}  // namespace maxcov
