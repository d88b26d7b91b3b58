#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace maxcov {

/// Exact rational scalar. Always stored normalized (gcd 1, positive denominator).
class Rational {
public:
  using rep_type = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(long long n) : rep_(n) {}
  Rational(long long num, long long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    rep_ = rep_type(num, den);
  }
  explicit Rational(rep_type r) : rep_(std::move(r)) {}

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }

  /// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
  static Rational parse(const std::string& text) {
    const auto malformed = [&] {
      return std::invalid_argument("malformed rational \"" + text + "\"");
    };
    const auto slash = text.find('/');
    if (text.empty() || slash == 0 || slash == text.size() - 1) throw malformed();
    try {
      if (slash == std::string::npos) {
        return Rational(rep_type(boost::multiprecision::cpp_int(text)));
      }
      boost::multiprecision::cpp_int num(text.substr(0, slash));
      boost::multiprecision::cpp_int den(text.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("malformed rational \"" + text + "\": zero denominator");
      if (den < 0) {
        num = -num;
        den = -den;
      }
      return Rational(rep_type(num, den));
    } catch (const std::runtime_error&) {
      throw malformed();
    }
  }

  Rational operator-() const { return Rational(rep_type(-rep_)); }
  Rational& operator+=(const Rational& o) { rep_ += o.rep_; return *this; }
  Rational& operator-=(const Rational& o) { rep_ -= o.rep_; return *this; }
  Rational& operator*=(const Rational& o) { rep_ *= o.rep_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    rep_ /= o.rep_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.rep_ == b.rep_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.rep_ != b.rep_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.rep_ < b.rep_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.rep_ <= b.rep_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.rep_ > b.rep_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.rep_ >= b.rep_; }

  bool is_zero() const { return rep_.is_zero(); }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("rational division by zero");
    return Rational(rep_type(1) / rep_);
  }

  Rational abs() const { return rep_ < 0 ? -*this : *this; }

  double to_double() const { return rep_.convert_to<double>(); }

  /// Renders as "p/q", denominator included even when 1 (stable CSV formatting).
  std::string str() const {
    return numerator(rep_).str() + "/" + denominator(rep_).str();
  }

  /// Exact square root; throws std::domain_error if the value is not a
  /// perfect rational square (needed for exact boost factors γ).
  Rational sqrt_exact() const {
    using boost::multiprecision::cpp_int;
    if (rep_ < 0) throw std::domain_error("square root of negative rational");
    const cpp_int num = numerator(rep_), den = denominator(rep_);
    const cpp_int rn = boost::multiprecision::sqrt(num);
    const cpp_int rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den)
      throw std::domain_error("rational " + str() + " is not a perfect square");
    return Rational(rep_type(rn, rd));
  }

  const rep_type& rep() const { return rep_; }

private:
  rep_type rep_;
};

/// Converts exact frame data into a backend's value type.
template <class V>
V value_from_rational(const Rational& r) {
  if constexpr (std::is_same_v<V, double>)
    return r.to_double();
  else
    return r;
}

}  // namespace maxcov
