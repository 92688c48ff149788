#ifndef MOMENTKIT_BIGFLOAT_HPP
#define MOMENTKIT_BIGFLOAT_HPP

#include <mpfr.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "momentkit/errors.hpp"
#include "momentkit/rational.hpp"

namespace momentkit {

// High-precision binary float on top of MPFR. New values and arithmetic
// results are rounded to the context precision (thread-local, default 256
// bits, never below 64); copies keep the source precision so rounding
// happens once per operation, not per copy.
class BigFloat {
 public:
  static mpfr_prec_t context_precision() { return ctx_prec_(); }
  static void set_context_precision(mpfr_prec_t p) {
    ctx_prec_() = p < 64 ? 64 : p;
  }

  BigFloat() { mpfr_init2(v_, context_precision()); mpfr_set_zero(v_, 1); }
  BigFloat(long n) {  // NOLINT: implicit by design
    mpfr_init2(v_, context_precision());
    mpfr_set_si(v_, n, MPFR_RNDN);
  }
  BigFloat(int n) : BigFloat(static_cast<long>(n)) {}
  explicit BigFloat(double d) {
    mpfr_init2(v_, context_precision());
    mpfr_set_d(v_, d, MPFR_RNDN);
  }
  // exact -> float promotion at context precision
  BigFloat(const Rational& q) {  // NOLINT: implicit by design
    mpfr_init2(v_, context_precision());
    mpfr_set_q(v_, q.raw(), MPFR_RNDN);
  }
  // Parses a decimal string at context precision.
  static BigFloat from_string(const std::string& s) {
    BigFloat r;
    if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      raise(errc::schema_error, "cannot parse decimal '" + s + "'");
    return r;
  }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, 64);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r;
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r;
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r;
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    if (b.is_zero()) raise(errc::zero_denominator, "float division by zero");
    BigFloat r;
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r;
    r.become_prec(mpfr_get_prec(v_));
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& o) { *this = *this + o; return *this; }
  BigFloat& operator-=(const BigFloat& o) { *this = *this - o; return *this; }
  BigFloat& operator*=(const BigFloat& o) { *this = *this * o; return *this; }
  BigFloat& operator/=(const BigFloat& o) { *this = *this / o; return *this; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) {
    return mpfr_cmp(a.v_, b.v_) == 0;
  }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) {
    return mpfr_cmp(a.v_, b.v_) < 0;
  }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return !(b < a); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return !(a < b); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  BigFloat abs() const {
    BigFloat r;
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat sqrt() const {
    if (sign() < 0) raise(errc::nonpositive_radicand, "sqrt of negative value");
    BigFloat r;
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat exp() const {
    BigFloat r;
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat log() const {
    BigFloat r;
    mpfr_log(r.v_, v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat pow(const BigFloat& a, const BigFloat& b) {
    BigFloat r;
    mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  // 2^e at context precision
  static BigFloat pow2(long e) {
    BigFloat r;
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  // binary exponent, i.e. floor(log2 |x|) + 1; very negative for zero
  long exponent2() const {
    if (is_zero()) return -(1L << 40);
    return static_cast<long>(mpfr_get_exp(v_));
  }

  // Deterministic scientific rendering with the given significant digits
  // (defaults to the full decimal capacity of the value's precision).
  std::string to_string(int digits = 0) const {
    if (digits <= 0)
      digits = static_cast<int>(mpfr_get_prec(v_) * 0.30103) + 1;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", digits - 1, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

 private:
  static mpfr_prec_t& ctx_prec_() {
    static thread_local mpfr_prec_t p = 256;
    return p;
  }
  void become_prec(mpfr_prec_t p) { mpfr_set_prec(v_, p); }
  mpfr_t v_;
};

inline BigFloat abs(const BigFloat& x) { return x.abs(); }
inline BigFloat sqrt(const BigFloat& x) { return x.sqrt(); }
inline BigFloat exp(const BigFloat& x) { return x.exp(); }
inline BigFloat log(const BigFloat& x) { return x.log(); }

// RAII guard: sets the context precision for a block of work.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(mpfr_prec_t p)
      : old_(BigFloat::context_precision()) {
    BigFloat::set_context_precision(p);
  }
  ~ScopedPrecision() { BigFloat::set_context_precision(old_); }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  mpfr_prec_t old_;
};

}  // namespace momentkit

#endif  // MOMENTKIT_BIGFLOAT_HPP
