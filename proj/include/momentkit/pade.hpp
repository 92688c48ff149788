#ifndef MOMENTKIT_PADE_HPP
#define MOMENTKIT_PADE_HPP

#include <optional>
#include <string>
#include <vector>

#include "momentkit/jacobi.hpp"
#include "momentkit/orthopoly.hpp"

namespace momentkit {

// [N, M] Pade approximant to the series sum (-1)^j gamma_j z^j, in the
// Baker sense: num/den with den(0) = 1 matching through order N+M. exists
// is the Baker existence gate; the diagonal fails exactly when P_M(0) = 0.
template <class T>
struct PadeApproximant {
  int N = 0, M = 0;
  bool exists = false;
  Polynomial<T> num, den;
};

template <class T, class Z>
struct PadeValue {
  int N = 0, M = 0;
  Z z{};
  Z value{};
  bool exists = false;
};

namespace detail {

// z^k * r(-1/z) as a polynomial (k >= deg r)
template <class T>
Polynomial<T> reverse_at(const Polynomial<T>& r, int k) {
  std::vector<T> c(k + 1, T(0));
  for (int j = 0; j <= r.degree(); ++j) {
    T term = r.coeff(j);
    if (j % 2 == 1) term = -term;
    c[k - j] = term;
  }
  return Polynomial<T>(std::move(c));
}

template <class T>
Polynomial<T> shift_up(const Polynomial<T>& r, int k) {
  if (r.is_zero()) return r;
  std::vector<T> c(r.degree() + 1 + k, T(0));
  for (int j = 0; j <= r.degree(); ++j) c[j + k] = r.coeff(j);
  return Polynomial<T>(std::move(c));
}

template <class T>
Polynomial<T> zero_constant_term(const Polynomial<T>& r) {
  std::vector<T> c(r.coeffs());
  if (!c.empty()) c[0] = T(0);
  return Polynomial<T>(std::move(c));
}

template <class T>
Polynomial<T> normalized_at_zero(const Polynomial<T>& r) {
  if (r.coeff(0).is_zero())
    raise(errc::zero_denominator, "denominator vanishes at 0");
  return (T(1) / r.coeff(0)) * r;
}

constexpr int kShapeCap = 8;  // |N - M| beyond this is not supported

}  // namespace detail

template <class T>
PadeApproximant<T> pade_approximant(const MomentSequence<T>& seq, int N, int M) {
  using detail::reverse_at;
  using detail::shift_up;
  if (N < 0 || M < 0)
    raise(errc::unsupported_shape, "negative Pade degrees");
  int d = N - M;
  if (d > detail::kShapeCap || d < -detail::kShapeCap)
    raise(errc::unsupported_shape,
          "shape offset " + std::to_string(d) + " outside supported staircase band");

  PadeApproximant<T> out;
  out.N = N;
  out.M = M;

  if (M == 0) {
    // polynomial approximant: the truncated series itself
    seq.require(N, "pade [N,0]");
    std::vector<T> c(N + 1, T(0));
    for (int j = 0; j <= N; ++j) c[j] = (j % 2 == 0) ? seq[j] : -seq[j];
    out.num = Polynomial<T>(std::move(c));
    out.den = Polynomial<T>::constant(T(1));
    out.exists = true;
    return out;
  }

  if (d == -1) {
    // F-section resolvent: f = -z^{M-1} q_M(-1/z) / (z^M p_M(-1/z))
    auto rc = recursion_coeffs(seq, M);
    auto ps = poly_p(rc, M);
    auto qs = poly_q(rc, M);
    Polynomial<T> B0 = reverse_at(ps[M], M);
    Polynomial<T> A0 = -reverse_at(qs[M], M - 1);
    T scale = T(1) / B0.coeff(0);
    out.den = scale * B0;
    out.num = scale * A0;
    out.exists = true;
    return out;
  }

  if (d == 0) {
    // K-section resolvent of size M+1, written corner-free:
    //   m(w) = w p_M(w) - a_{M-1}^2 [p_{M-1}(w) - (p_{M-1}(0)/p_M(0)) p_M(w)]
    // and the same combination for n with q's.
    auto rc = chebyshev_coeffs(seq, M, M);
    auto ps = poly_p(rc, M);
    auto qs = poly_q(rc, M);
    T pM0 = ps[M].coeff(0);
    if (pM0.is_zero()) {
      out.exists = false;  // Theorem gate: the diagonal entry does not exist
      return out;
    }
    T ratio = ps[M - 1].coeff(0) / pM0;
    Polynomial<T> X = Polynomial<T>::x();
    T a2 = rc.a2[M - 1];
    Polynomial<T> mpoly = X * ps[M] - a2 * (ps[M - 1] - ratio * ps[M]);
    Polynomial<T> npoly = X * qs[M] - a2 * (qs[M - 1] - ratio * qs[M]);
    mpoly = detail::zero_constant_term(mpoly);  // m(0) = 0 identically
    Polynomial<T> B0 = reverse_at(mpoly, M + 1);
    Polynomial<T> A0 = -reverse_at(npoly, M);
    T scale = T(1) / B0.coeff(0);
    out.den = scale * B0;
    out.num = scale * A0;
    out.exists = true;
    return out;
  }

  if (d >= 1) {
    // peel off the first ell series terms and delegate the tail to the
    // index-shifted problem gamma^(ell); ell is kept even so the shift is
    // valid for Hamburger sequences too
    int ell = (d % 2 == 1) ? d + 1 : d;
    seq.require(ell, "pade staircase");
    MomentSequence<T> shifted = index_shift(seq, ell);
    PadeApproximant<T> tail = (d % 2 == 1)
                                  ? pade_approximant(shifted, M - 1, M)
                                  : pade_approximant(shifted, M, M);
    out.exists = tail.exists;
    if (!tail.exists) return out;
    std::vector<T> pc(ell, T(0));
    for (int j = 0; j < ell; ++j) pc[j] = (j % 2 == 0) ? seq[j] : -seq[j];
    Polynomial<T> partial(std::move(pc));
    out.den = tail.den;
    out.num = partial * tail.den + seq[ell] * shift_up(tail.num, ell);
    return out;
  }

  // d <= -2: reciprocal route through the stripped problem gamma^(0):
  //   f(z) = 1 / (1 + gamma_1 z - a_0^2 z^2 g(z)),
  // g the gamma^(0) series, approximated at shape [M-2, N].
  if (M < 2)
    raise(errc::unsupported_shape, "[N,M] with N <= M-2 needs M >= 2");
  // hand the recursion every gamma^(0) moment the prefix supports; the
  // inner staircase shifts need a few beyond the bare 2M+d-2
  int depth_avail = (seq.max_index() + 1) / 2;
  int j0_want = 2 * M + d + 4;
  int depth = std::min(depth_avail, (j0_want + 3) / 2 + ((j0_want + 3) % 2));
  if (depth < 2) depth = 2;
  auto rc = recursion_coeffs(seq, depth);
  int j0 = 2 * (depth - 1) - 1;
  auto rcs = strip(rc);
  MomentSequence<T> g0 = moments_from_jacobi(rcs, j0);
  g0.kind = seq.kind;
  PadeApproximant<T> G = pade_approximant(g0, M - 2, N);
  out.exists = G.exists;
  if (!G.exists) return out;
  T gamma1 = seq[1];
  T a20 = rc.a2[0];
  out.num = G.den;
  out.den = G.den + gamma1 * shift_up(G.den, 1) - a20 * shift_up(G.num, 2);
  return out;
}

template <class T, class Z>
PadeValue<T, Z> pade_value(const MomentSequence<T>& seq, int N, int M, const Z& z) {
  PadeApproximant<T> ap = pade_approximant(seq, N, M);
  PadeValue<T, Z> v;
  v.N = N;
  v.M = M;
  v.z = z;
  v.exists = ap.exists;
  if (!ap.exists) return v;
  Z den = ap.den.template eval<Z>(z);
  if (den.is_zero()) raise(errc::pole_hit, "Pade approximant has a pole at z");
  v.value = ap.num.template eval<Z>(z) / den;
  return v;
}

// Classical construction by the Taylor-matching linear system; the
// independent oracle for the spectral-identity route. Returns nothing when
// the system is singular.
template <class T>
std::optional<PadeApproximant<T>> pade_by_linear_solve(const MomentSequence<T>& seq,
                                                       int N, int M) {
  seq.require(N + M, "pade linear solve");
  auto kappa = [&](int j) { return j % 2 == 0 ? seq[j] : -seq[j]; };
  PadeApproximant<T> out;
  out.N = N;
  out.M = M;
  std::vector<T> b(M + 1, T(0));
  b[0] = T(1);
  if (M > 0) {
    Matrix<T> C(M, M);
    std::vector<T> rhs(M, T(0));
    for (int r = 0; r < M; ++r) {
      int k = N + 1 + r;
      for (int j = 1; j <= M; ++j)
        C.at(r, j - 1) = (k - j >= 0) ? kappa(k - j) : T(0);
      rhs[r] = -kappa(k);
    }
    try {
      auto x = solve_linear(C, rhs);
      for (int j = 1; j <= M; ++j) b[j] = x[j - 1];
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  std::vector<T> a(N + 1, T(0));
  for (int k = 0; k <= N; ++k) {
    T acc(0);
    for (int j = 0; j <= std::min(k, M); ++j) acc = acc + b[j] * kappa(k - j);
    a[k] = acc;
  }
  out.num = Polynomial<T>(std::move(a));
  out.den = Polynomial<T>(std::move(b));
  out.exists = true;
  return out;
}

// Expands the constructed approximant as a power series and returns the
// first Taylor order at which it leaves the moment series; must be at
// least N+M+1. Also cross-validates against the linear-solve construction.
template <class T>
int taylor_match_check(const MomentSequence<T>& seq, int N, int M) {
  PadeApproximant<T> ap = pade_approximant(seq, N, M);
  if (!ap.exists)
    raise(errc::not_exists, "[" + std::to_string(N) + "," + std::to_string(M) +
                                "] approximant does not exist");
  int horizon = std::min(seq.max_index(), N + M + 4);
  auto recip = series_reciprocal(ap.den.coeffs(), horizon);
  int mismatch = horizon + 1;
  for (int j = 0; j <= horizon; ++j) {
    T cj(0);
    for (int i = 0; i <= std::min(j, ap.num.degree()); ++i)
      cj = cj + ap.num.coeff(i) * recip[j - i];
    T kj = (j % 2 == 0) ? seq[j] : -seq[j];
    bool match;
    if constexpr (is_exact_v<T>) {
      match = (cj == kj);
    } else {
      BigFloat scale = abs_value(kj) + BigFloat(1);
      match = abs_value(cj - kj) <=
              scale * identity_tolerance(BigFloat::context_precision());
    }
    if (!match) {
      mismatch = j;
      break;
    }
  }

  if (auto lin = pade_by_linear_solve(seq, N, M)) {
    // uniqueness of the Pade value: cross-multiplied forms must agree
    Polynomial<T> lhs = ap.num * lin->den;
    Polynomial<T> rhs = lin->num * ap.den;
    Polynomial<T> diff = lhs - rhs;
    bool ok;
    if constexpr (is_exact_v<T>) {
      ok = diff.is_zero();
    } else {
      BigFloat scale(0);
      for (int i = 0; i <= lhs.degree(); ++i)
        scale = scale + abs_value(lhs.coeff(i));
      scale = scale + BigFloat(1);
      ok = true;
      for (int i = 0; i <= diff.degree(); ++i)
        if (abs_value(diff.coeff(i)) >
            scale * abort_tolerance(BigFloat::context_precision()))
          ok = false;
    }
    if (!ok)
      raise(errc::cross_check_failure,
            "spectral and linear-solve Pade constructions disagree");
  }
  return mismatch;
}

template <class T>
struct PadeTableCell {
  int N = 0, M = 0;
  bool exists = false;
  bool pole = false;  // approximant exists but has a pole at x
  T value{};
};

template <class T>
struct PadeTable {
  T x{};
  int n_max = 0;
  std::vector<int> shapes;                        // spec offsets ell
  std::vector<std::vector<PadeTableCell<T>>> rows;  // one row per shape
  std::vector<std::string> warnings;
  bool bracket_valid = false;
  int bracket_N = 0;
  T bracket_lo{}, bracket_hi{};
};

// Emits f^{[N+ell-1, N]}(x) for N <= n_max per requested shape, checks the
// (-1)^ell monotonicity when the sequence is Stieltjes, and reports the
// final [f^{[N-1,N]}, f^{[N,N]}] bracket.
template <class T>
PadeTable<T> pade_table(const MomentSequence<T>& seq, const T& x, int n_max,
                        const std::vector<int>& shapes) {
  PadeTable<T> table;
  table.x = x;
  table.n_max = n_max;
  table.shapes = shapes;
  bool stieltjes = seq.kind == Kind::stieltjes;
  if (!stieltjes)
    table.warnings.push_back(
        "sequence is not stieltjes: monotonicity not asserted");
  if (!(x > T(0)))
    table.warnings.push_back("x <= 0: monotone limit theory does not apply");

  for (int ell : shapes) {
    if (ell < -3 || ell > 3)
      raise(errc::unsupported_shape, "table shapes are capped at |ell| <= 3");
    std::vector<PadeTableCell<T>> row;
    for (int N = 1; N <= n_max; ++N) {
      PadeTableCell<T> cell;
      cell.N = N + ell - 1;
      cell.M = N;
      if (cell.N < 0) {
        row.push_back(cell);
        continue;
      }
      try {
        auto v = pade_value(seq, cell.N, cell.M, x);
        cell.exists = v.exists;
        if (v.exists) cell.value = v.value;
      } catch (const Error& e) {
        if (e.code() == errc::too_short) break;
        if (e.code() == errc::pole_hit) {
          cell.exists = true;
          cell.pole = true;
          table.warnings.push_back("pole at x for shape " + std::to_string(ell) +
                                   ", N = " + std::to_string(cell.M));
        } else {
          throw;
        }
      }
      row.push_back(cell);
    }
    if (stieltjes && x > T(0)) {
      const PadeTableCell<T>* prev = nullptr;
      for (const auto& cell : row) {
        if (!cell.exists) continue;
        if (cell.pole) {
          prev = nullptr;
          continue;
        }
        if (prev) {
          T inc = cell.value - prev->value;
          if (ell % 2 != 0) inc = -inc;
          bool ok;
          if constexpr (is_exact_v<T>) {
            ok = inc >= T(0);
          } else {
            ok = inc >= -identity_tolerance(BigFloat::context_precision()) *
                            (abs_value(cell.value) + BigFloat(1));
          }
          if (!ok)
            table.warnings.push_back("monotonicity violated at shape " +
                                     std::to_string(ell) + ", N = " +
                                     std::to_string(cell.M));
        }
        prev = &cell;
      }
    }
    table.rows.push_back(std::move(row));
  }

  // bracket [f^{[N-1,N]}, f^{[N,N]}] at the largest N whose diagonal exists
  for (int N = n_max; N >= 1; --N) {
    try {
      auto lo = pade_value(seq, N - 1, N, x);
      auto hi = pade_value(seq, N, N, x);
      if (lo.exists && hi.exists) {
        table.bracket_valid = true;
        table.bracket_N = N;
        table.bracket_lo = lo.value;
        table.bracket_hi = hi.value;
        break;
      }
    } catch (const Error& e) {
      if (e.code() != errc::too_short && e.code() != errc::pole_hit) throw;
    }
  }
  return table;
}

}  // namespace momentkit

#endif  // MOMENTKIT_PADE_HPP
