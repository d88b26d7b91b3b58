#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "maxcov/rational.hpp"

namespace maxcov {
namespace linalg_detail {

// Exact backend: any nonzero pivot is as good as any other.
inline bool negligible(const Rational& v, double) { return v.is_zero(); }
inline double pivot_weight(const Rational& v) { return v.is_zero() ? 0.0 : 1.0; }

inline bool negligible(double v, double tol) { return std::fabs(v) <= tol; }
inline double pivot_weight(double v) { return std::fabs(v); }

}  // namespace linalg_detail

/// Solves A x = b by Gaussian elimination for n×m systems with n ≥ m and a
/// unique solution. Overdetermined rows must be consistent: after elimination
/// their right-hand side has to vanish (within tol for the double backend).
/// Throws std::runtime_error on singular or inconsistent systems.
template <class V>
std::vector<V> solve_linear_system(std::vector<std::vector<V>> a, std::vector<V> b,
                                   double tol = 1e-9) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  if (rows < cols) throw std::runtime_error("underdetermined linear system");
  if (b.size() != rows) throw std::runtime_error("linear system shape mismatch");

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t best = rows;
    double best_weight = 0.0;
    for (std::size_t r = rank; r < rows; ++r) {
      const double w = linalg_detail::pivot_weight(a[r][c]);
      if (w > best_weight) {
        best_weight = w;
        best = r;
      }
    }
    if (best == rows || linalg_detail::negligible(a[best][c], tol))
      throw std::runtime_error("singular linear system");
    std::swap(a[rank], a[best]);
    std::swap(b[rank], b[best]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || linalg_detail::negligible(a[r][c], tol)) continue;
      const V factor = a[r][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= factor * a[rank][j];
      b[r] -= factor * b[rank];
    }
    ++rank;
  }

  for (std::size_t r = rank; r < rows; ++r)
    if (!linalg_detail::negligible(b[r], tol))
      throw std::runtime_error("inconsistent linear system");

  std::vector<V> x(cols, V(0));
  for (std::size_t c = 0; c < cols; ++c) x[c] = b[c] / a[c][c];
  return x;
}

}  // namespace maxcov
