#ifndef MOMENTKIT_RATIONAL_HPP
#define MOMENTKIT_RATIONAL_HPP

#include <gmp.h>

#include <cstdlib>
#include <string>
#include <utility>

#include "momentkit/errors.hpp"

namespace momentkit {

// Arbitrary-precision rational, a thin RAII wrapper around GMP's mpq_t.
// Values are always kept in canonical form (coprime, positive denominator).
class Rational {
 public:
  Rational() { mpq_init(v_); }
  Rational(long n) {  // NOLINT: implicit by design, mirrors int literals
    mpq_init(v_);
    mpq_set_si(v_, n, 1);
  }
  Rational(int n) : Rational(static_cast<long>(n)) {}
  Rational(long num, unsigned long den) {
    mpq_init(v_);
    if (den == 0) raise(errc::zero_denominator, "rational with zero denominator");
    mpq_set_si(v_, num, den);
    mpq_canonicalize(v_);
  }
  // Parses "p", "-p" or "p/q". Throws SchemaError on malformed input.
  static Rational from_string(const std::string& str) {
    std::string s = (!str.empty() && str[0] == '+') ? str.substr(1) : str;
    Rational r;
    if (s.empty() || mpq_set_str(r.v_, s.c_str(), 10) != 0)
      raise(errc::schema_error, "cannot parse rational '" + s + "'");
    if (mpz_sgn(mpq_denref(r.v_)) == 0)
      raise(errc::schema_error, "zero denominator in '" + s + "'");
    mpq_canonicalize(r.v_);
    return r;
  }

  Rational(const Rational& o) {
    mpq_init(v_);
    mpq_set(v_, o.v_);
  }
  Rational(Rational&& o) noexcept {
    mpq_init(v_);
    mpq_swap(v_, o.v_);
  }
  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(v_, o.v_);
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    if (this != &o) mpq_swap(v_, o.v_);
    return *this;
  }
  ~Rational() { mpq_clear(v_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.v_, a.v_, b.v_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.v_, a.v_, b.v_);
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.v_, a.v_, b.v_);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) raise(errc::zero_denominator, "rational division by zero");
    Rational r;
    mpq_div(r.v_, a.v_, b.v_);
    return r;
  }
  Rational operator-() const {
    Rational r;
    mpq_neg(r.v_, v_);
    return r;
  }
  Rational& operator+=(const Rational& o) { mpq_add(v_, v_, o.v_); return *this; }
  Rational& operator-=(const Rational& o) { mpq_sub(v_, v_, o.v_); return *this; }
  Rational& operator*=(const Rational& o) { mpq_mul(v_, v_, o.v_); return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.v_, b.v_) != 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return mpq_cmp(a.v_, b.v_) < 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  bool is_zero() const { return mpq_sgn(v_) == 0; }
  int sign() const { return mpq_sgn(v_); }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(v_), 1) == 0; }
  Rational abs() const {
    Rational r;
    mpq_abs(r.v_, v_);
    return r;
  }

  double to_double() const { return mpq_get_d(v_); }

  std::string to_string() const {
    char* s = mpq_get_str(nullptr, 10, v_);
    std::string out(s);
    std::free(s);
    return out;
  }

  // Exposed for the few spots that need direct GMP calls (binomials etc).
  mpq_srcptr raw() const { return v_; }
  mpq_ptr raw() { return v_; }

 private:
  mpq_t v_;
};

inline Rational abs(const Rational& x) { return x.abs(); }

// n! as an exact rational.
inline Rational factorial(unsigned long n) {
  Rational r;
  mpz_fac_ui(mpq_numref(r.raw()), n);
  return r;
}

// binomial(n, k), exact.
inline Rational binomial(unsigned long n, unsigned long k) {
  Rational r;
  mpz_bin_uiui(mpq_numref(r.raw()), n, k);
  return r;
}

}  // namespace momentkit

#endif  // MOMENTKIT_RATIONAL_HPP
