#ifndef MOMENTKIT_MOMENTS_HPP
#define MOMENTKIT_MOMENTS_HPP

#include <string>
#include <vector>

#include "momentkit/complex.hpp"
#include "momentkit/errors.hpp"
#include "momentkit/polynomial.hpp"
#include "momentkit/scalar.hpp"

namespace momentkit {

enum class Kind { hamburger, stieltjes, unknown };

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::hamburger: return "hamburger";
    case Kind::stieltjes: return "stieltjes";
    case Kind::unknown: return "unknown";
  }
  return "unknown";
}

// Normalized moment prefix gamma_0..gamma_K with gamma_0 = 1. `kind`
// records the user's support claim; existence_check verifies it.
template <class T>
struct MomentSequence {
  std::vector<T> gamma;
  Kind kind = Kind::unknown;
  std::string label;

  int max_index() const { return static_cast<int>(gamma.size()) - 1; }
  const T& operator[](int n) const { return gamma[n]; }

  void require(int n, const char* who) const {
    if (n > max_index())
      raise(errc::too_short, std::string(who) + " needs gamma_" +
                                 std::to_string(n) + " but only " +
                                 std::to_string(max_index()) + " available");
  }

  // E[poly] under the moment functional.
  T functional(const Polynomial<T>& p) const {
    T acc(0);
    for (int k = 0; k <= p.degree(); ++k) {
      require(k, "moment functional");
      acc = acc + p.coeff(k) * gamma[k];
    }
    return acc;
  }
};

template <class T>
MomentSequence<T> normalize(const std::vector<T>& raw, Kind kind,
                            std::string label = {}) {
  if (raw.empty()) raise(errc::empty_input, "no moments given");
  if (!(raw[0] > T(0))) raise(errc::nonpositive_mass, "gamma_0 must be positive");
  MomentSequence<T> s;
  s.kind = kind;
  s.label = std::move(label);
  s.gamma.reserve(raw.size());
  for (const T& g : raw) s.gamma.push_back(g / raw[0]);
  return s;
}

enum class Family { hermite, laguerre, lognormal };

inline Family family_from_name(const std::string& name) {
  if (name == "hermite") return Family::hermite;
  if (name == "laguerre") return Family::laguerre;
  if (name == "lognormal") return Family::lognormal;
  raise(errc::unknown_family, "no generator named '" + name + "'");
}

// Named test families. hermite: gamma_{2n} = (2n-1)!!, odd moments zero.
// laguerre: gamma_n = n!. lognormal: gamma_k = e^((k+1)^2/4) normalized to
// gamma_0 = 1; the log is stored exactly and exponentiated at context
// precision, so it is float-mode only.
template <class T>
MomentSequence<T> generate(Family family, int K) {
  if (K < 2) raise(errc::too_short, "generator needs K >= 2");
  MomentSequence<T> s;
  s.gamma.resize(K + 1, T(0));
  switch (family) {
    case Family::hermite: {
      s.kind = Kind::hamburger;
      s.label = "hermite";
      T cur(1);
      s.gamma[0] = cur;
      for (int n = 1; 2 * n <= K; ++n) {
        cur = cur * T(2 * n - 1);
        s.gamma[2 * n] = cur;
      }
      break;
    }
    case Family::laguerre: {
      s.kind = Kind::stieltjes;
      s.label = "laguerre";
      T cur(1);
      s.gamma[0] = cur;
      for (int n = 1; n <= K; ++n) {
        cur = cur * T(n);
        s.gamma[n] = cur;
      }
      break;
    }
    case Family::lognormal: {
      if constexpr (is_exact_v<T>) {
        raise(errc::unknown_family, "lognormal moments are transcendental; use float mode");
      } else {
        s.kind = Kind::stieltjes;
        s.label = "lognormal";
        for (int k = 0; k <= K; ++k) {
          Rational lg(static_cast<long>(k) * k + 2L * k, 4UL);
          s.gamma[k] = BigFloat(lg).exp();
        }
      }
      break;
    }
  }
  return s;
}

// Translated-measure moments gamma_n(c) = sum_j binom(n,j) c^j gamma_{n-j}.
// Translation does not preserve support in [0,inf), so kind is dropped.
template <class T>
MomentSequence<T> shift_moments(const MomentSequence<T>& s, const T& c) {
  MomentSequence<T> out;
  out.kind = Kind::unknown;
  out.label = s.label.empty() ? "" : s.label + "(shifted)";
  int K = s.max_index();
  out.gamma.resize(K + 1, T(0));
  for (int n = 0; n <= K; ++n) {
    T acc(0);
    T cj(1);
    for (int j = 0; j <= n; ++j) {
      acc = acc + T(binomial(n, j)) * cj * s.gamma[n - j];
      cj = cj * c;
    }
    out.gamma[n] = acc;
  }
  return out;
}

// gamma^(l)_j = gamma_{j+l} / gamma_l. Odd shifts are only meaningful for
// Stieltjes sequences; Hamburger admits l = 2, 4, ...
template <class T>
MomentSequence<T> index_shift(const MomentSequence<T>& s, int ell) {
  if (ell < 1) raise(errc::unsupported_shape, "index shift needs ell >= 1");
  if (ell % 2 == 1 && s.kind != Kind::stieltjes)
    raise(errc::odd_shift_on_hamburger,
          "odd index shift requires a stieltjes sequence");
  if (s.max_index() < ell + 2)
    raise(errc::too_short, "index shift needs K >= ell + 2");
  MomentSequence<T> out;
  out.kind = s.kind;
  out.label = s.label.empty() ? "" : s.label + "^(" + std::to_string(ell) + ")";
  int K = s.max_index();
  out.gamma.reserve(K - ell + 1);
  for (int j = 0; j + ell <= K; ++j) out.gamma.push_back(s.gamma[j + ell] / s.gamma[ell]);
  return out;
}

// Even embedding Gamma_{2m} = gamma_m, Gamma_{2m+1} = 0 of a Stieltjes
// sequence into a symmetric Hamburger one. Determinacy transfers both ways.
template <class T>
MomentSequence<T> even_embed(const MomentSequence<T>& s) {
  if (s.kind != Kind::stieltjes)
    raise(errc::not_stieltjes, "even embedding needs a stieltjes sequence");
  MomentSequence<T> out;
  out.kind = Kind::hamburger;
  out.label = s.label.empty() ? "" : s.label + "(even)";
  int K = s.max_index();
  out.gamma.resize(2 * K + 1, T(0));
  for (int m = 0; m <= K; ++m) out.gamma[2 * m] = s.gamma[m];
  return out;
}

// Modified moments Gamma_m of d_nu = d_rho / prod |x - z_i|^2 given the
// claimed Stieltjes-transform values zeta_i at z_i. Exact partial fractions:
// x^m = P*D + R with D = prod (x-z_i)(x-conj z_i), then
// Gamma_m = E[P] + sum_i [R(z_i)/D'(z_i) * zeta_i + conjugate].
template <class T>
MomentSequence<T> modified_moments(const MomentSequence<T>& s,
                                   const std::vector<Complex<T>>& z,
                                   const std::vector<Complex<T>>& zeta) {
  int n = static_cast<int>(z.size());
  if (static_cast<int>(zeta.size()) != n)
    raise(errc::schema_error, "z and zeta lists must have equal length");
  for (int i = 0; i < n; ++i) {
    if (!(z[i].im > T(0)))
      raise(errc::lower_half_plane_point, "z_" + std::to_string(i) + " must have Im z > 0");
    for (int j = i + 1; j < n; ++j)
      if (z[i] == z[j]) raise(errc::coincident_points, "z points must be distinct");
  }
  if (n == 0) return s;
  int K = s.max_index();
  if (K < 2 * n) raise(errc::too_short, "modified moments need K >= 2n");

  Polynomial<T> D = Polynomial<T>::constant(T(1));
  for (int i = 0; i < n; ++i) {
    // (x - z)(x - conj z) = x^2 - 2 Re(z) x + |z|^2, real coefficients
    Polynomial<T> q(std::vector<T>{z[i].abs2(), T(-2) * z[i].re, T(1)});
    D = D * q;
  }
  Polynomial<T> Dp = D.derivative();

  MomentSequence<T> out;
  out.kind = Kind::unknown;
  out.label = s.label.empty() ? "" : s.label + "(modified)";
  int Kout = K - 2 * n;
  out.gamma.reserve(Kout + 1);

  std::vector<T> xm{T(1)};
  for (int m = 0; m <= Kout; ++m) {
    Polynomial<T> num(xm);
    auto [quot, rem] = Polynomial<T>::divmod(num, D);
    Complex<T> resid{};
    for (int i = 0; i < n; ++i) {
      Complex<T> ri = rem.template eval<Complex<T>>(z[i]) /
                      Dp.template eval<Complex<T>>(z[i]);
      Complex<T> rbar = rem.template eval<Complex<T>>(z[i].conj()) /
                        Dp.template eval<Complex<T>>(z[i].conj());
      resid = resid + ri * zeta[i] + rbar * zeta[i].conj();
    }
    T value = s.functional(quot) + resid.re;
    if constexpr (!is_exact_v<T>) {
      BigFloat scale = abs_value(value) + BigFloat(1);
      if (abs_value(resid.im) >
          scale * identity_tolerance(BigFloat::context_precision()))
        raise(errc::non_real_result, "imaginary residue in modified moment " +
                                         std::to_string(m));
    }
    out.gamma.push_back(value);
    xm.insert(xm.begin(), T(0));
  }
  return out;
}

}  // namespace momentkit

#endif  // MOMENTKIT_MOMENTS_HPP
