#ifndef MOMENTKIT_SCALAR_HPP
#define MOMENTKIT_SCALAR_HPP

#include <type_traits>

#include "momentkit/bigfloat.hpp"
#include "momentkit/complex.hpp"
#include "momentkit/rational.hpp"

namespace momentkit {

// Compile-time facts about the two scalar backends.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
};

template <>
struct ScalarTraits<BigFloat> {
  static constexpr bool exact = false;
  static BigFloat zero() { return BigFloat(); }
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<Complex<T>> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <class Z>
struct real_scalar {
  using type = Z;
};
template <class T>
struct real_scalar<Complex<T>> {
  using type = T;
};
// Underlying real scalar of a (possibly complex) value type.
template <class Z>
using real_scalar_t = typename real_scalar<Z>::type;

// Tolerance policy at precision p: identity checks pass at 2^-(p-16)
// relative, failures looser than 2^-(p/2) abort with a conditioning
// diagnostic.
inline BigFloat identity_tolerance(long p) { return BigFloat::pow2(-(p - 16)); }
inline BigFloat abort_tolerance(long p) { return BigFloat::pow2(-(p / 2)); }

}  // namespace momentkit

#endif  // MOMENTKIT_SCALAR_HPP
