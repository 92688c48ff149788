#ifndef MOMENTKIT_MATRIX_HPP
#define MOMENTKIT_MATRIX_HPP

#include <utility>
#include <vector>

#include "momentkit/errors.hpp"
#include "momentkit/scalar.hpp"

namespace momentkit {

// Small dense row-major matrix. Only what the determinant oracles and the
// Pick test need; no general linear algebra ambitions.
template <class T>
class Matrix {
 public:
  Matrix() : n_(0), m_(0) {}
  Matrix(int rows, int cols) : n_(rows), m_(cols), d_(rows * cols, T(0)) {}

  int rows() const { return n_; }
  int cols() const { return m_; }
  T& at(int i, int j) { return d_[i * m_ + j]; }
  const T& at(int i, int j) const { return d_[i * m_ + j]; }

 private:
  int n_, m_;
  std::vector<T> d_;
};

// Bareiss fraction-free elimination; all interior divisions are exact, so
// this is the exact-mode determinant. Row pivoting on zero pivots only.
template <class T>
T bareiss_det(Matrix<T> a) {
  int n = a.rows();
  if (n == 0) return T(1);
  int sign = 1;
  T prev(1);
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k).is_zero()) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (!a.at(i, k).is_zero()) { p = i; break; }
      if (p < 0) return T(0);
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  T det = a.at(n - 1, n - 1);
  return sign < 0 ? -det : det;
}

template <class T>
struct LuResult {
  T det;
  real_scalar_t<T> growth;  // max |U| over max |A|, the usual element-growth factor
};

// Partially pivoted LU determinant for float mode, with recorded growth
// factor so callers can flag dubious results.
template <class T>
LuResult<T> lu_det(Matrix<T> a) {
  using R = real_scalar_t<T>;
  int n = a.rows();
  if (n == 0) return {T(1), R(1)};
  R amax(0), umax(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (abs_value(a.at(i, j)) > amax) amax = abs_value(a.at(i, j));
  int sign = 1;
  T det(1);
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (abs_value(a.at(i, k)) > abs_value(a.at(p, k))) p = i;
    if (a.at(p, k).is_zero()) return {T(0), amax.is_zero() ? R(1) : umax / amax};
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    det = det * a.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      T f = a.at(i, k) / a.at(k, k);
      for (int j = k; j < n; ++j) {
        a.at(i, j) = a.at(i, j) - f * a.at(k, j);
        if (abs_value(a.at(i, j)) > umax) umax = abs_value(a.at(i, j));
      }
    }
    if (abs_value(a.at(k, k)) > umax) umax = abs_value(a.at(k, k));
  }
  R growth = amax.is_zero() ? R(1) : umax / amax;
  if (growth < R(1)) growth = R(1);
  return {sign < 0 ? -det : det, growth};
}

// Gaussian solve of a (square, nonsingular) system; works for real and
// complex entries, exact or float. Pivots by magnitude in float mode and by
// first nonzero in exact mode.
template <class Z>
std::vector<Z> solve_linear(Matrix<Z> a, std::vector<Z> b) {
  using R = real_scalar_t<Z>;
  int n = a.rows();
  for (int k = 0; k < n; ++k) {
    int p = -1;
    if constexpr (is_exact_v<R>) {
      for (int i = k; i < n; ++i)
        if (!a.at(i, k).is_zero()) { p = i; break; }
    } else {
      p = k;
      for (int i = k + 1; i < n; ++i)
        if (abs2(a.at(i, k)) > abs2(a.at(p, k))) p = i;
      if (a.at(p, k).is_zero()) p = -1;
    }
    if (p < 0) raise(errc::zero_denominator, "singular linear system");
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      std::swap(b[k], b[p]);
    }
    for (int i = k + 1; i < n; ++i) {
      Z f = a.at(i, k) / a.at(k, k);
      for (int j = k; j < n; ++j) a.at(i, j) = a.at(i, j) - f * a.at(k, j);
      b[i] = b[i] - f * b[k];
    }
  }
  std::vector<Z> x(n, Z{});
  for (int i = n - 1; i >= 0; --i) {
    Z acc = b[i];
    for (int j = i + 1; j < n; ++j) acc = acc - a.at(i, j) * x[j];
    x[i] = acc / a.at(i, i);
  }
  return x;
}

}  // namespace momentkit

#endif  // MOMENTKIT_MATRIX_HPP
