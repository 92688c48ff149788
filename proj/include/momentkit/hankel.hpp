#ifndef MOMENTKIT_HANKEL_HPP
#define MOMENTKIT_HANKEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "momentkit/matrix.hpp"
#include "momentkit/moments.hpp"

namespace momentkit {

enum class HankelVerdict { hamburger_ok, stieltjes_ok, degenerate, not_stieltjes };

inline const char* verdict_name(HankelVerdict v) {
  switch (v) {
    case HankelVerdict::hamburger_ok: return "hamburger_ok";
    case HankelVerdict::stieltjes_ok: return "stieltjes_ok";
    case HankelVerdict::degenerate: return "degenerate";
    case HankelVerdict::not_stieltjes: return "not_stieltjes";
  }
  return "?";
}

// h_1..h_N and s_1..s_M (with h_0 = s_0 = 1 by the empty-determinant
// convention, stored at index 0). A solvable Hamburger problem has all
// h_j > 0; Stieltjes additionally needs all s_j > 0.
template <class T>
struct HankelReport {
  std::vector<T> h;  // h[j] = det of the j x j section, h[0] = 1
  std::vector<T> s;  // s[j] likewise for the shifted matrix
  std::optional<int> first_h_failure;
  std::optional<int> first_s_failure;
  HankelVerdict verdict = HankelVerdict::degenerate;
  bool low_confidence = false;  // float mode: LU growth ate the digits
  double max_growth = 1.0;
};

// N x N matrix with entries gamma_{i+j+offset}.
template <class T>
Matrix<T> hankel_matrix(const MomentSequence<T>& seq, int N, int offset) {
  seq.require(2 * N - 2 + offset, "hankel matrix");
  Matrix<T> m(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) m.at(i, j) = seq[i + j + offset];
  return m;
}

namespace detail {

template <class T>
T hankel_det(const MomentSequence<T>& seq, int N, int offset, double* growth,
             bool* flagged) {
  Matrix<T> m = hankel_matrix(seq, N, offset);
  if constexpr (is_exact_v<T>) {
    return bareiss_det(m);
  } else {
    BigFloat amax(0);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (m.at(i, j).abs() > amax) amax = m.at(i, j).abs();
    auto r = lu_det(m);
    double g = r.growth.to_double();
    if (growth && g > *growth) *growth = g;
    // flag when fewer than ~10 significant digits survive: element growth,
    // or cancellation measured by the Hadamard-bound ratio
    long p = BigFloat::context_precision();
    long bits_lost = 0;
    if (!amax.is_zero()) {
      long hadamard = N * amax.exponent2() + N;  // log2(n^{n/2} amax^n) approx
      bits_lost = hadamard - r.det.exponent2();
    }
    if (flagged && (BigFloat(static_cast<double>(N)) * r.growth *
                            BigFloat::pow2(-p) >
                        BigFloat(1e-10) ||
                    bits_lost > p - 34 || r.det.is_zero()))
      *flagged = true;
    return r.det;
  }
}

}  // namespace detail

template <class T>
HankelReport<T> hankel_dets(const MomentSequence<T>& seq, int N) {
  if (N < 1) raise(errc::too_short, "hankel_dets needs N >= 1");
  seq.require(2 * N - 2, "hankel_dets");
  int Ns = std::min(N, (seq.max_index() + 1) / 2);

  HankelReport<T> rep;
  rep.h.push_back(T(1));
  rep.s.push_back(T(1));
  for (int j = 1; j <= N; ++j) {
    T hj = detail::hankel_det(seq, j, 0, &rep.max_growth, &rep.low_confidence);
    rep.h.push_back(hj);
    if (!(hj > T(0)) && !rep.first_h_failure) rep.first_h_failure = j;
  }
  for (int j = 1; j <= Ns; ++j) {
    T sj = detail::hankel_det(seq, j, 1, &rep.max_growth, &rep.low_confidence);
    rep.s.push_back(sj);
    if (!(sj > T(0)) && !rep.first_s_failure) rep.first_s_failure = j;
  }

  if (rep.first_h_failure) {
    rep.verdict = HankelVerdict::degenerate;
  } else if (!rep.first_s_failure && Ns >= 1) {
    rep.verdict = HankelVerdict::stieltjes_ok;
  } else if (seq.kind == Kind::stieltjes) {
    rep.verdict = HankelVerdict::not_stieltjes;
  } else {
    rep.verdict = HankelVerdict::hamburger_ok;
  }
  return rep;
}

// Runs hankel_dets to the largest depth the prefix supports.
template <class T>
HankelReport<T> existence_check(const MomentSequence<T>& seq) {
  int N = seq.max_index() / 2 + 1;
  return hankel_dets(seq, N);
}

// Auxiliary determinants of the appendix oracles, indexed by subscript:
//   h_tilde[n]: Hankel section with its last column advanced one moment,
//               so sum_{j<=n-1} b_j = h_tilde[n]/h[n]
//   t[n]      = -Q_n(0)/P_n(0) * s_n as a single determinant
//   v[n]      : entries gamma_{i+j+2}; sum_{j<=n} P_j(0)^2 = v[n]/h[n+1]
//   w[n]      : doubly bordered form; sum_{j<=n-2} Q_j(0)^2 = -w[n]/h[n-1]
//   y[n]      : entries gamma_{i+j+4}; determinacy ratio y[n-1]/h[n+1]
// Index-0 entries are the empty-determinant conventions.
template <class T>
struct AuxDets {
  std::vector<T> h_tilde, t, v, w, y;
};

template <class T>
AuxDets<T> aux_dets(const MomentSequence<T>& seq, int n) {
  if (n < 1) raise(errc::too_short, "aux_dets needs n >= 1");
  seq.require(2 * n, "aux_dets");
  AuxDets<T> out;
  double growth = 1.0;
  bool flagged = false;

  out.h_tilde.push_back(T(0));
  for (int k = 1; k <= n; ++k) {
    Matrix<T> m(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j + 1 < k; ++j) m.at(i, j) = seq[i + j];
      m.at(i, k - 1) = seq[i + k];
    }
    if constexpr (is_exact_v<T>) out.h_tilde.push_back(bareiss_det(m));
    else out.h_tilde.push_back(lu_det(m).det);
  }

  // t_k = -det of the (k+1)x(k+1) matrix bordering the Hankel block with
  // row (0, gamma_0, ..., gamma_{k-1}) on top.
  out.t.push_back(T(0));
  for (int k = 1; k <= n; ++k) {
    Matrix<T> m(k + 1, k + 1);
    m.at(0, 0) = T(0);
    for (int j = 1; j <= k; ++j) m.at(0, j) = seq[j - 1];
    for (int i = 1; i <= k; ++i)
      for (int j = 0; j <= k; ++j) m.at(i, j) = seq[i - 1 + j];
    if constexpr (is_exact_v<T>) out.t.push_back(-bareiss_det(m));
    else out.t.push_back(-lu_det(m).det);
  }

  out.v.push_back(T(1));
  for (int k = 1; k <= n; ++k)
    out.v.push_back(detail::hankel_det(seq, k, 2, &growth, &flagged));

  // w_m, m >= 2: rows (0, 0, gamma_0, ..), (0, gamma_0, ..), then the
  // Hankel rows; w_2 = 0, and w_0, w_1 are padding.
  out.w.push_back(T(0));
  out.w.push_back(T(0));
  for (int m = 2; m <= n + 2; ++m) {
    if (m - 2 > 0) seq.require(2 * m - 4, "aux_dets w");
    Matrix<T> a(m, m);
    for (int j = 2; j < m; ++j) a.at(0, j) = seq[j - 2];
    for (int j = 1; j < m; ++j) a.at(1, j) = seq[j - 1];
    for (int i = 2; i < m; ++i)
      for (int j = 0; j < m; ++j) a.at(i, j) = seq[i + j - 2];
    if constexpr (is_exact_v<T>) out.w.push_back(bareiss_det(a));
    else out.w.push_back(lu_det(a).det);
  }

  out.y.push_back(T(1));
  for (int k = 1; 2 * k + 2 <= seq.max_index() && k <= n; ++k)
    out.y.push_back(detail::hankel_det(seq, k, 4, &growth, &flagged));

  return out;
}

}  // namespace momentkit

#endif  // MOMENTKIT_HANKEL_HPP
