#ifndef MOMENTKIT_INTEGRATE_HPP
#define MOMENTKIT_INTEGRATE_HPP

#include <mpfr.h>

#include "momentkit/bigfloat.hpp"

namespace momentkit {

namespace detail {

inline BigFloat const_pi() {
  BigFloat r;
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

inline BigFloat cosh_bf(const BigFloat& x) {
  BigFloat r;
  mpfr_cosh(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline BigFloat sinh_bf(const BigFloat& x) {
  BigFloat r;
  mpfr_sinh(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline BigFloat tanh_bf(const BigFloat& x) {
  BigFloat r;
  mpfr_tanh(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline BigFloat asinh_bf(const BigFloat& x) {
  BigFloat r;
  mpfr_asinh(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

}  // namespace detail

// Tanh-sinh (double exponential) quadrature of f over [a, b] to absolute
// tolerance tol. Converges exponentially for integrands analytic on the
// open interval, including endpoint singularities of integrable type,
// which is exactly what the high-precision oracles need; a fixed-order
// adaptive rule cannot reach these tolerances.
template <class F>
BigFloat quad_tanh_sinh(F f, const BigFloat& a, const BigFloat& b,
                        const BigFloat& tol, int max_level = 12) {
  long p = BigFloat::context_precision();
  ScopedPrecision guard(p + 32);
  BigFloat half(Rational(1, 2));
  BigFloat mid = (a + b) * half;
  BigFloat rad = (b - a) * half;
  BigFloat pi2 = detail::const_pi() * half;

  // truncation: weights decay like exp(-pi/2 * e^t); stop once they drop
  // below the tolerance floor
  BigFloat L = (BigFloat(1) / tol + BigFloat(2)).log();
  BigFloat tmax = detail::asinh_bf(L / pi2) + BigFloat(1);

  auto node = [&](const BigFloat& t, BigFloat& x, BigFloat& w) {
    BigFloat u = pi2 * detail::sinh_bf(t);
    BigFloat c = detail::cosh_bf(u);
    x = mid + rad * detail::tanh_bf(u);
    w = rad * pi2 * detail::cosh_bf(t) / (c * c);
  };

  auto add_pair = [&](const BigFloat& t, BigFloat& sum) {
    BigFloat x, w;
    node(t, x, w);
    if (x > a && x < b) sum += w * f(x);
    node(-t, x, w);
    if (x > a && x < b) sum += w * f(x);
  };

  // level 0: all integer abscissas
  BigFloat h(1);
  BigFloat sum;
  {
    BigFloat x, w;
    node(BigFloat(0), x, w);
    sum = w * f(x);
  }
  for (long k = 1; BigFloat(k) <= tmax; ++k) add_pair(BigFloat(k), sum);
  BigFloat prev = sum * h;
  BigFloat result = prev;
  for (int level = 1; level <= max_level; ++level) {
    h = h * half;
    // new points are the odd multiples of the refined h
    for (long k = 1; h * BigFloat(k) <= tmax; k += 2) add_pair(h * BigFloat(k), sum);
    result = sum * h;
    if (level >= 3 && (result - prev).abs() <= tol) break;
    prev = result;
  }
  return result;
}

}  // namespace momentkit

#endif  // MOMENTKIT_INTEGRATE_HPP
