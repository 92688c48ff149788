#ifndef MOMENTKIT_COMPLEX_HPP
#define MOMENTKIT_COMPLEX_HPP

#include <string>

#include "momentkit/bigfloat.hpp"
#include "momentkit/rational.hpp"

namespace momentkit {

// Complex number over either scalar backend. Both components share the mode.
template <class T>
struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T r) : re(std::move(r)) {}  // NOLINT: implicit by design
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  static Complex i() { return Complex(T(0), T(1)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  Complex conj() const { return Complex(re, -im); }
  T abs2() const { return re * re + im * im; }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re + b.re, a.im + b.im);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re - b.re, a.im - b.im);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Complex operator*(const T& a, const Complex& b) {
    return Complex(a * b.re, a * b.im);
  }
  friend Complex operator*(const Complex& a, const T& b) { return b * a; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    T d = b.abs2();
    if (d.is_zero()) raise(errc::zero_denominator, "complex division by zero");
    Complex n = a * b.conj();
    return Complex(n.re / d, n.im / d);
  }
  friend Complex operator/(const Complex& a, const T& b) {
    return Complex(a.re / b, a.im / b);
  }
  Complex operator-() const { return Complex(-re, -im); }
  Complex& operator+=(const Complex& o) { *this = *this + o; return *this; }
  Complex& operator-=(const Complex& o) { *this = *this - o; return *this; }
  Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

using ComplexRational = Complex<Rational>;
using ComplexBigFloat = Complex<BigFloat>;

template <class T>
Complex<T> conj(const Complex<T>& z) { return z.conj(); }
template <class T>
T abs2(const Complex<T>& z) { return z.abs2(); }
template <class T>
T abs2(const T& x) { return x * x; }

inline BigFloat abs_value(const ComplexBigFloat& z) { return z.abs2().sqrt(); }
inline BigFloat abs_value(const BigFloat& x) { return x.abs(); }
inline Rational abs_value(const Rational& x) { return x.abs(); }

// Promotion of a complex rational to the float backend.
inline ComplexBigFloat to_float(const ComplexRational& z) {
  return ComplexBigFloat(BigFloat(z.re), BigFloat(z.im));
}

}  // namespace momentkit

#endif  // MOMENTKIT_COMPLEX_HPP
