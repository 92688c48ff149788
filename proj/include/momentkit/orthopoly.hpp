#ifndef MOMENTKIT_ORTHOPOLY_HPP
#define MOMENTKIT_ORTHOPOLY_HPP

#include <utility>
#include <vector>

#include "momentkit/hankel.hpp"
#include "momentkit/matrix.hpp"
#include "momentkit/moments.hpp"
#include "momentkit/polynomial.hpp"

namespace momentkit {

// Jacobi data (a_n^2, b_n). The off-diagonal is stored squared so the whole
// moments -> coefficients map stays rational in exact mode; square roots are
// taken only when a numeric a_n is demanded.
template <class T>
struct RecursionCoefficients {
  std::vector<T> b;   // b_0 .. b_{depth-1}
  std::vector<T> a2;  // a_0^2 .. ; at least depth-1 entries, sometimes depth

  int depth() const { return static_cast<int>(b.size()); }

  void require_index(int n, const char* who) const {
    // values of index n need b_0..b_{n-1} and a_0^2..a_{n-2}^2
    if (n > depth() || n - 1 > static_cast<int>(a2.size()))
      raise(errc::too_short,
            std::string(who) + " needs coefficients to index " + std::to_string(n));
  }
};

// Coefficients from moments, by the classical three-term update on the
// mixed inner products sigma_{n,k} = E[p_n x^k] (the Chebyshev algorithm in
// the monomial basis). Computes b_0..b_{nb-1} and a_0^2..a_{na-1}^2.
template <class T>
RecursionCoefficients<T> chebyshev_coeffs(const MomentSequence<T>& seq, int nb,
                                          int na) {
  if (nb < 1) raise(errc::too_short, "need at least b_0");
  int levels = std::max(nb - 1, na);
  int kreq = std::max(2 * na, 2 * nb - 1);
  seq.require(kreq, "recursion coefficients");

  RecursionCoefficients<T> rc;
  std::vector<T> prev;  // sigma_{n-1, *}
  std::vector<T> cur(seq.gamma.begin(), seq.gamma.begin() + (kreq + 1));
  rc.b.push_back(seq[1] / seq[0]);
  std::vector<T> nu{seq[0]};
  for (int n = 1; n <= levels; ++n) {
    int hi = kreq - n;
    std::vector<T> next(hi + 1, T(0));
    for (int k = n; k <= hi; ++k) {
      T sv = cur[k + 1] - rc.b[n - 1] * cur[k];
      if (n >= 2) sv = sv - rc.a2[n - 2] * prev[k];
      next[k] = sv;
    }
    T nun = next[n];
    if (!(nun > T(0)))
      raise(errc::degenerate_sequence,
            "nonpositive norm at depth " + std::to_string(n) +
                " (finite support or not a moment sequence)");
    if (n <= na) rc.a2.push_back(nun / nu.back());
    if (n <= nb - 1) rc.b.push_back(next[n + 1] / nun - cur[n] / nu.back());
    nu.push_back(nun);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return rc;
}

// pre: existence to depth N, i.e. gamma_0..gamma_{2N-1} available and
// positive-definite. Agrees with the determinant formulas a_n^2 =
// h_n h_{n+2} / h_{n+1}^2 and sum b_j = h~_{n+1}/h_{n+1}.
template <class T>
RecursionCoefficients<T> recursion_coeffs(const MomentSequence<T>& seq, int N) {
  return chebyshev_coeffs(seq, N, N - 1);
}

// Values of the monic first/second-kind solutions p_n, q_n at a point,
// together with pi_n = prod_{j<n} a_j^2. The orthonormal values are
// P_n = p_n / sqrt(pi_n), Q_n = q_n / sqrt(pi_n); paired products such as
// P_n Q_n, a_{n-1} P_n P_{n-1} are rational in the monic data, which is what
// keeps exact mode exact.
template <class T, class Z>
struct MonicEval {
  Z z;
  std::vector<Z> p, q;  // indices 0..N
  std::vector<T> pi;    // as far as a2 allows (up to N)
};

template <class T, class Z>
MonicEval<T, Z> monic_eval(const RecursionCoefficients<T>& rc, const Z& z, int N) {
  rc.require_index(N, "monic_eval");
  MonicEval<T, Z> ev;
  ev.z = z;
  ev.p.reserve(N + 1);
  ev.q.reserve(N + 1);
  Z pm1(T(0)), qm1(T(-1));
  ev.p.push_back(Z(T(1)));
  ev.q.push_back(Z(T(0)));
  for (int n = 0; n < N; ++n) {
    T a2n1 = n >= 1 ? rc.a2[n - 1] : T(1);
    Z pn = (z - Z(rc.b[n])) * ev.p[n] - Z(a2n1) * pm1;
    Z qn = (z - Z(rc.b[n])) * ev.q[n] - Z(a2n1) * qm1;
    pm1 = ev.p[n];
    qm1 = ev.q[n];
    ev.p.push_back(pn);
    ev.q.push_back(qn);
  }
  ev.pi.push_back(T(1));
  for (int n = 1; n <= N && n - 1 < static_cast<int>(rc.a2.size()); ++n)
    ev.pi.push_back(ev.pi.back() * rc.a2[n - 1]);
  return ev;
}

// Orthonormal values P_0..P_N and Q_0..Q_N (float mode; takes square roots).
template <class Z>
struct OrthoEval {
  Z z;
  std::vector<Z> P, Q;
};

template <class T, class Z>
OrthoEval<Z> ortho_eval(const RecursionCoefficients<T>& rc, const Z& z, int N) {
  static_assert(!is_exact_v<T>, "orthonormal values need square roots; use monic_eval in exact mode");
  if (N > static_cast<int>(rc.b.size()) || N > static_cast<int>(rc.a2.size()))
    raise(errc::too_short, "ortho_eval needs b and a^2 through index N-1");
  OrthoEval<Z> ev;
  ev.z = z;
  ev.P.push_back(Z(T(1)));
  ev.Q.push_back(Z(T(0)));
  Z pm1(T(0)), qm1(T(-1));
  T am1(1);
  for (int n = 0; n < N; ++n) {
    T an = rc.a2[n].sqrt();
    Z pn = ((z - Z(rc.b[n])) * ev.P[n] - Z(am1) * pm1) / Z(an);
    Z qn = ((z - Z(rc.b[n])) * ev.Q[n] - Z(am1) * qm1) / Z(an);
    pm1 = ev.P[n];
    qm1 = ev.Q[n];
    am1 = an;
    ev.P.push_back(pn);
    ev.Q.push_back(qn);
  }
  return ev;
}

template <class T, class Z>
std::vector<Z> eval_P(const RecursionCoefficients<T>& rc, const Z& z, int N) {
  return ortho_eval(rc, z, N).P;
}
template <class T, class Z>
std::vector<Z> eval_Q(const RecursionCoefficients<T>& rc, const Z& z, int N) {
  return ortho_eval(rc, z, N).Q;
}

// Monic coefficient vectors of p_n / q_n (used by the divided-difference
// oracle and the Pade constructions).
template <class T>
std::vector<Polynomial<T>> poly_p(const RecursionCoefficients<T>& rc, int N) {
  rc.require_index(N, "poly_p");
  std::vector<Polynomial<T>> ps;
  Polynomial<T> pm1, pn = Polynomial<T>::constant(T(1));
  Polynomial<T> X = Polynomial<T>::x();
  ps.push_back(pn);
  for (int n = 0; n < N; ++n) {
    T a2n1 = n >= 1 ? rc.a2[n - 1] : T(1);
    Polynomial<T> nxt = (X - Polynomial<T>::constant(rc.b[n])) * pn - a2n1 * pm1;
    pm1 = pn;
    pn = nxt;
    ps.push_back(pn);
  }
  return ps;
}

template <class T>
std::vector<Polynomial<T>> poly_q(const RecursionCoefficients<T>& rc, int N) {
  rc.require_index(N, "poly_q");
  std::vector<Polynomial<T>> qs;
  Polynomial<T> qm1 = Polynomial<T>::constant(T(-1));
  Polynomial<T> qn;
  Polynomial<T> X = Polynomial<T>::x();
  qs.push_back(qn);
  for (int n = 0; n < N; ++n) {
    T a2n1 = n >= 1 ? rc.a2[n - 1] : T(1);
    Polynomial<T> nxt = (X - Polynomial<T>::constant(rc.b[n])) * qn - a2n1 * qm1;
    qm1 = qn;
    qn = nxt;
    qs.push_back(qn);
  }
  return qs;
}

// Second-kind values by the divided-difference identity
// q_n(z) = E_X[(p_n(X) - p_n(z)) / (X - z)], an oracle independent of the
// q recurrence. Exact in exact mode.
template <class T, class Z>
std::vector<Z> eval_second_kind_by_integral(const RecursionCoefficients<T>& rc,
                                            const MomentSequence<T>& seq,
                                            const Z& z, int N) {
  auto ps = poly_p(rc, N);
  if (N >= 1) seq.require(N - 1, "divided-difference oracle");
  std::vector<Z> out;
  out.reserve(N + 1);
  for (int n = 0; n <= N; ++n) {
    // E_X[(p(X)-p(z))/(X-z)] = sum_k c_k sum_{i<k} gamma_i z^{k-1-i}
    Z acc{};
    for (int k = 1; k <= ps[n].degree(); ++k) {
      Z inner{};
      for (int i = 0; i < k; ++i) inner = inner * z + Z(seq[i]);
      acc = acc + Z(ps[n].coeff(k)) * inner;
    }
    out.push_back(acc);
  }
  return out;
}

// Krein-section polynomials in monic form:
//   m_N(z) = p_N(z) - p_N(0) p_{N-1}(z) / p_{N-1}(0),   m_N(0) = 0
//   n_N(z) = q_N(z) - p_N(0) q_{N-1}(z) / p_{N-1}(0)
// The orthonormal M_N, N_N are these divided by sqrt(pi_N).
template <class T, class Z>
std::pair<Z, Z> monic_MN(const RecursionCoefficients<T>& rc, const Z& z, int N) {
  auto at0 = monic_eval(rc, T(0), N);
  if (at0.p[N - 1].is_zero())
    raise(errc::zero_denominator,
          "P_{N-1}(0) = 0: Krein section undefined at N = " + std::to_string(N));
  auto ev = monic_eval(rc, z, N);
  T ratio = at0.p[N] / at0.p[N - 1];
  return {ev.p[N] - Z(ratio) * ev.p[N - 1], ev.q[N] - Z(ratio) * ev.q[N - 1]};
}

// Orthonormal Krein-section values (float mode).
template <class T, class Z>
std::pair<Z, Z> eval_MN(const RecursionCoefficients<T>& rc, const Z& z, int N) {
  static_assert(!is_exact_v<T>);
  rc.require_index(N, "eval_MN");
  auto [m, n] = monic_MN(rc, z, N);
  T pin(1);
  for (int j = 0; j < N; ++j) pin = pin * rc.a2[j];
  T scale = pin.sqrt();
  return {m / Z(scale), n / Z(scale)};
}

// Bordered-Hankel value S_n(z) = P_n(z) sqrt(h_n h_{n+1}) (Appendix
// determinant formula), plus the radicand, so the exact comparison is
// p_recurrence(z)^2 * h_n * h_{n+1} = S_n(z)^2 * pi_n.
template <class T, class Z>
struct DetFormulaP {
  Z S;
  T radicand;  // h_n h_{n+1}
};

template <class T, class Z>
DetFormulaP<T, Z> det_formula_P(const MomentSequence<T>& seq, int n, const Z& z) {
  seq.require(n >= 1 ? 2 * n - 1 : 0, "det_formula_P");
  Matrix<Z> m(n + 1, n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= n; ++j) m.at(i, j) = Z(seq[i + j]);
  Z zj(T(1));
  for (int j = 0; j <= n; ++j) {
    m.at(n, j) = zj;
    zj = zj * z;
  }
  Z S;
  if constexpr (is_exact_v<T>) S = bareiss_det(m);
  else S = lu_det(m).det;
  T hn = n >= 1 ? detail::hankel_det(seq, n, 0, nullptr, nullptr) : T(1);
  T hn1 = detail::hankel_det(seq, n + 1, 0, nullptr, nullptr);
  return {S, hn * hn1};
}

// Wronskian residuals a_{k-1}^2 (q_k p_{k-1} - q_{k-1} p_k) - pi_k for
// k = 1..N; identically zero. In float mode the products cancel
// catastrophically for growing solutions, so the check runs with guard
// bits and reports the relative residual against pi_k.
template <class T, class Z>
std::vector<Z> wronskian_residuals(const RecursionCoefficients<T>& rc, const Z& z,
                                   int N) {
  if (N > static_cast<int>(rc.a2.size()))
    raise(errc::too_short, "wronskian needs a^2 through index N-1");
  auto ev = monic_eval(rc, z, N);
  std::vector<Z> out;
  out.reserve(N);
  for (int k = 1; k <= N; ++k) {
    T a2 = rc.a2[k - 1];
    Z w = Z(a2) * (ev.q[k] * ev.p[k - 1] - ev.q[k - 1] * ev.p[k]);
    out.push_back(w - Z(ev.pi[k]));
  }
  return out;
}

// Max relative Wronskian residual over k <= N at the context precision p.
// The subtraction cancels catastrophically when the solutions grow, so the
// evaluation itself runs with guard bits; residuals looser than 2^{-p/2}
// abort with a conditioning diagnostic.
template <class T>
BigFloat wronskian_max_relative(const RecursionCoefficients<T>& rc,
                                const Complex<BigFloat>& z, int N) {
  long p = BigFloat::context_precision();
  BigFloat worst(0);
  {
    ScopedPrecision guard(p + 96 + 2 * N);
    RecursionCoefficients<BigFloat> rcf;
    for (const auto& bv : rc.b) rcf.b.push_back(BigFloat(bv));
    for (const auto& av : rc.a2) rcf.a2.push_back(BigFloat(av));
    auto res = wronskian_residuals(rcf, z, N);
    auto ev = monic_eval(rcf, z, N);
    for (int k = 1; k <= N; ++k) {
      BigFloat rel = abs_value(res[k - 1]) / ev.pi[k];
      if (rel > worst) worst = rel;
    }
  }
  BigFloat out = worst;  // round back to the ambient precision
  if (out > abort_tolerance(p))
    raise(errc::convergence_failure,
          "Wronskian residual exceeds 2^(-p/2): coefficients too ill-conditioned");
  return out;
}

}  // namespace momentkit

#endif  // MOMENTKIT_ORTHOPOLY_HPP
