#ifndef MOMENTKIT_POLYNOMIAL_HPP
#define MOMENTKIT_POLYNOMIAL_HPP

#include <utility>
#include <vector>

#include "momentkit/errors.hpp"
#include "momentkit/scalar.hpp"

namespace momentkit {

// Dense polynomial with ascending coefficients. The zero polynomial has an
// empty coefficient vector and degree -1.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }
  static Polynomial x() { return Polynomial(std::vector<T>{T(0), T(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : T(0);
  }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }

  template <class Z>
  Z eval(const Z& x) const {
    Z acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Z(*it);
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const T& s, const Polynomial& p) {
    std::vector<T> r(p.c_);
    for (auto& ci : r) ci = ci * s;
    return Polynomial(std::move(r));
  }
  Polynomial operator-() const { return T(-1) * *this; }

  // Euclidean division by a nonzero divisor; exact in exact mode.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& num,
                                                  const Polynomial& den) {
    if (den.is_zero()) raise(errc::zero_denominator, "polynomial division by zero");
    std::vector<T> rem(num.c_);
    int dn = num.degree(), dd = den.degree();
    if (dn < dd) return {Polynomial(), num};
    std::vector<T> quot(dn - dd + 1, T(0));
    for (int k = dn; k >= dd; --k) {
      T q = rem[k] / den.c_[dd];
      quot[k - dd] = q;
      for (int j = 0; j <= dd; ++j) rem[k - dd + j] = rem[k - dd + j] - q * den.c_[j];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<T> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = T(static_cast<long>(i)) * c_[i];
    return Polynomial(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<T> c_;
};

// Truncated power-series reciprocal of p with p(0) invertible:
// returns q with p*q = 1 + O(z^(order+1)).
template <class T>
std::vector<T> series_reciprocal(const std::vector<T>& p, int order) {
  if (p.empty() || p[0].is_zero())
    raise(errc::zero_denominator, "series reciprocal needs nonzero constant term");
  std::vector<T> q(order + 1, T(0));
  q[0] = T(1) / p[0];
  for (int k = 1; k <= order; ++k) {
    T acc(0);
    for (int j = 1; j <= k; ++j) {
      T pj = j < static_cast<int>(p.size()) ? p[j] : T(0);
      acc = acc + pj * q[k - j];
    }
    q[k] = -acc / p[0];
  }
  return q;
}

}  // namespace momentkit

#endif  // MOMENTKIT_POLYNOMIAL_HPP
