#ifndef MOMENTKIT_NEVANLINNA_HPP
#define MOMENTKIT_NEVANLINNA_HPP

#include <optional>
#include <string>
#include <vector>

#include "momentkit/matrix.hpp"
#include "momentkit/orthopoly.hpp"

namespace momentkit {

// Left product T(n,-1; z, 0) of the factors 1 + z S(j, 0), where
// S(j,0) = [[-Q_j(0)P_j(0), -Q_j(0)^2], [P_j(0)^2, P_j(0)Q_j(0)]].
// Each factor is unimodular (S^2 = det S = tr S = 0), so det T = 1.
template <class T>
struct TransferMatrix {
  Complex<T> a00, a01, a10, a11;
  int depth = -1;
  Complex<T> z;

  Complex<T> det() const { return a00 * a11 - a01 * a10; }
};

template <class T>
TransferMatrix<T> transfer(const RecursionCoefficients<T>& rc, int n,
                           const Complex<T>& z) {
  using Z = Complex<T>;
  if (n >= 0) {
    rc.require_index(n, "transfer");
    if (n > static_cast<int>(rc.a2.size()))
      raise(errc::too_short, "transfer needs a^2 through index n-1");
  }
  TransferMatrix<T> t;
  t.depth = n;
  t.z = z;
  t.a00 = Z(T(1)); t.a11 = Z(T(1)); t.a01 = Z(T(0)); t.a10 = Z(T(0));
  if (n < 0) return t;
  auto ev = monic_eval(rc, T(0), n);
  for (int j = 0; j <= n; ++j) {
    T pq = ev.p[j] * ev.q[j] / ev.pi[j];
    T qq = ev.q[j] * ev.q[j] / ev.pi[j];
    T pp = ev.p[j] * ev.p[j] / ev.pi[j];
    // factor F = I + z S(j,0)
    Z f00 = Z(T(1)) - z * Z(pq);
    Z f01 = -z * Z(qq);
    Z f10 = z * Z(pp);
    Z f11 = Z(T(1)) + z * Z(pq);
    Z n00 = f00 * t.a00 + f01 * t.a10;
    Z n01 = f00 * t.a01 + f01 * t.a11;
    Z n10 = f10 * t.a00 + f11 * t.a10;
    Z n11 = f10 * t.a01 + f11 * t.a11;
    t.a00 = n00; t.a01 = n01; t.a10 = n10; t.a11 = n11;
  }
  return t;
}

// Entries of the Nevanlinna matrix at truncation depth N, extracted from
// the transfer product T = [[-B, -A], [D, C]] and cross-checked against the
// truncated sums A = z sum Q_n(0)Q_n(z), B = -1 + z sum Q_n(0)P_n(z),
// C = 1 + z sum P_n(0)Q_n(z), D = z sum P_n(0)P_n(z). The two forms are
// algebraically identical at every finite depth.
template <class T>
struct NevanlinnaMatrix {
  Complex<T> A, B, C, D;
  int depth = 0;
  Complex<T> z;
  T last_increment{};  // norm of the depth-N summand block, a convergence cue
};

template <class T>
NevanlinnaMatrix<T> abcd(const RecursionCoefficients<T>& rc, const Complex<T>& z,
                         int N) {
  using Z = Complex<T>;
  TransferMatrix<T> t = transfer(rc, N, z);
  NevanlinnaMatrix<T> m;
  m.depth = N;
  m.z = z;
  m.B = -t.a00;
  m.A = -t.a01;
  m.D = t.a10;
  m.C = t.a11;

  auto at0 = monic_eval(rc, T(0), N);
  auto ev = monic_eval(rc, z, N);
  Z sqq{}, sqp{}, spq{}, spp{};
  for (int n = 0; n <= N; ++n) {
    Z q0 = Z(at0.q[n]), p0 = Z(at0.p[n]);
    T ipi = T(1) / ev.pi[n];
    sqq = sqq + q0 * ev.q[n] * Z(ipi);
    sqp = sqp + q0 * ev.p[n] * Z(ipi);
    spq = spq + p0 * ev.q[n] * Z(ipi);
    spp = spp + p0 * ev.p[n] * Z(ipi);
  }
  Z As = z * sqq;
  Z Bs = Z(T(-1)) + z * sqp;
  Z Cs = Z(T(1)) + z * spq;
  Z Ds = z * spp;

  auto check = [&](const Z& prod, const Z& sum, const char* which) {
    if constexpr (is_exact_v<T>) {
      if (!(prod == sum))
        raise(errc::cross_check_failure,
              std::string("product and sum forms of ") + which + " disagree");
    } else {
      BigFloat scale = abs_value(sum) + BigFloat(1);
      if (abs_value(prod - sum) >
          scale * BigFloat::pow2(-(BigFloat::context_precision() - 28)))
        raise(errc::cross_check_failure,
              std::string("product and sum forms of ") + which +
                  " disagree beyond tolerance");
    }
  };
  check(m.A, As, "A");
  check(m.B, Bs, "B");
  check(m.C, Cs, "C");
  check(m.D, Ds, "D");

  T inc = (at0.p[N] * at0.p[N] + at0.q[N] * at0.q[N]) / at0.pi[N];
  m.last_increment = inc;
  return m;
}

// A value in the extended plane; fractional linear maps may hit infinity.
template <class T>
struct ExtendedComplex {
  Complex<T> value{};
  bool infinite = false;
};

// F(z)(w) = -(C w + A)/(D w + B); w = infinity maps to -C/D.
template <class T>
ExtendedComplex<T> f_map(const NevanlinnaMatrix<T>& m,
                         const std::optional<Complex<T>>& w) {
  using Z = Complex<T>;
  Z num, den;
  if (w) {
    num = m.C * *w + m.A;
    den = m.D * *w + m.B;
  } else {
    num = m.C;
    den = m.D;
  }
  if (den.is_zero()) return {Z{}, true};
  return {-(num / den), false};
}

template <class T>
ExtendedComplex<T> f_map(const NevanlinnaMatrix<T>& m, std::nullopt_t) {
  return f_map(m, std::optional<Complex<T>>{});
}

// Stieltjes transform of the von Neumann solution with parameter
// t = (delta_0, B_t^{-1} delta_0), at truncation depth N.
template <class T>
Complex<T> vonneumann_G(const RecursionCoefficients<T>& rc,
                        const std::optional<T>& t, const Complex<T>& z, int N) {
  NevanlinnaMatrix<T> m = abcd(rc, z, N);
  std::optional<Complex<T>> w;
  if (t) w = Complex<T>(*t);
  ExtendedComplex<T> g = f_map(m, w);
  if (g.infinite)
    raise(errc::pole_hit, "von Neumann transform infinite at this (t, z)");
  if (z.im > T(0)) {
    bool herglotz;
    if constexpr (is_exact_v<T>) {
      herglotz = g.value.im > T(0);
    } else {
      BigFloat scale = abs_value(g.value) + BigFloat(1);
      herglotz = g.value.im >
                 -scale * identity_tolerance(BigFloat::context_precision());
    }
    if (!herglotz)
      raise(errc::non_herglotz_output,
            "Im G <= 0 for Im z > 0 (conditioning failure)");
  }
  return g.value;
}

template <class T>
Complex<T> vonneumann_G(const RecursionCoefficients<T>& rc, std::nullopt_t,
                        const Complex<T>& z, int N) {
  return vonneumann_G(rc, std::optional<T>{}, z, N);
}

// Weyl disk at depth N: the set of zeta with
// sum_{n<N} |Q_n(z) + zeta P_n(z)|^2 <= Im(zeta)/Im(z), a closed disk with
// center -conj(b)/a and radius sqrt(|b|^2 - a c)/a where a = sum |P_n|^2,
// c = sum |Q_n|^2, b = sum P_n conj(Q_n) + i/(2 Im z). The depth-N
// F-resolvent value lies on the boundary.
template <class T>
struct WeylDisk {
  Complex<T> z;
  int depth = 0;
  Complex<T> center;
  T radius{};
  T norm_p2{};  // sum_{n<N} |P_n(z)|^2, for the limit-radius comparison
};

template <class T>
WeylDisk<T> weyl_disk(const RecursionCoefficients<T>& rc, const Complex<T>& z,
                      int N) {
  static_assert(!is_exact_v<T>, "weyl_disk takes a square root; float mode only");
  using Z = Complex<T>;
  if (!(z.im > T(0)))
    raise(errc::lower_half_plane_point, "Weyl disk needs Im z > 0");
  auto ev = monic_eval(rc, z, N - 1);
  T a(0), c(0);
  Z b{};
  for (int n = 0; n < N; ++n) {
    T ipi = T(1) / ev.pi[n];
    a = a + ev.p[n].abs2() * ipi;
    c = c + ev.q[n].abs2() * ipi;
    b = b + ev.p[n] * ev.q[n].conj() * Z(ipi);
  }
  b = b + Z(T(0), T(1) / (T(2) * z.im));
  WeylDisk<T> disk;
  disk.z = z;
  disk.depth = N;
  disk.center = -(b.conj()) / Z(a);
  T rad2 = (b.abs2() - a * c) / (a * a);
  if (!(rad2 > T(0)))
    raise(errc::nonpositive_radicand, "Weyl disk radicand not positive");
  disk.radius = rad2.sqrt();
  disk.norm_p2 = a;
  return disk;
}

// Pick matrix D_ij = (w_i - conj(w_j)) / (z_i - conj(z_j)) and its
// positive-semidefiniteness test. degenerate (det = 0) means the
// interpolation problem has a unique solution of degree <= n-1.
template <class T>
struct PickResult {
  bool psd = false;
  bool degenerate = false;
  T det{};
  int n = 0;
};

template <class T>
PickResult<T> pick_test(const std::vector<Complex<T>>& z,
                        const std::vector<Complex<T>>& w) {
  using Z = Complex<T>;
  int n = static_cast<int>(z.size());
  if (n == 0 || static_cast<int>(w.size()) != n)
    raise(errc::schema_error, "pick_test needs equal nonempty z and w lists");
  for (int i = 0; i < n; ++i) {
    if (!(z[i].im > T(0)))
      raise(errc::lower_half_plane_point, "pick nodes need Im z > 0");
    for (int j = i + 1; j < n; ++j)
      if (z[i] == z[j]) raise(errc::coincident_nodes, "pick nodes must be distinct");
  }
  Matrix<Z> D(n, n);
  T trace(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      D.at(i, j) = (w[i] - w[j].conj()) / (z[i] - z[j].conj());
      if (i == j) trace = trace + abs_value(D.at(i, j).re);
    }

  PickResult<T> res;
  res.n = n;

  // determinant of the Hermitian matrix (real up to roundoff)
  Z det;
  if constexpr (is_exact_v<T>) det = bareiss_det(D);
  else det = lu_det(D).det;
  res.det = det.re;

  // pivoted LDL^H style elimination for semidefiniteness
  T tol(0);
  if constexpr (!is_exact_v<T>)
    tol = BigFloat::pow2(-(BigFloat::context_precision() / 2)) * trace;
  Matrix<Z> Acopy = D;
  std::vector<int> alive(n);
  for (int i = 0; i < n; ++i) alive[i] = i;
  bool psd = true;
  bool rank_deficient = false;
  while (!alive.empty()) {
    int pick = 0;
    for (size_t i = 1; i < alive.size(); ++i)
      if (abs_value(Acopy.at(alive[i], alive[i]).re) >
          abs_value(Acopy.at(alive[pick], alive[pick]).re))
        pick = static_cast<int>(i);
    int k = alive[pick];
    T d = Acopy.at(k, k).re;
    if (abs_value(d) <= tol || d.is_zero()) {
      // all remaining diagonal entries are (numerically) zero; any
      // surviving off-diagonal mass makes the matrix indefinite
      bool off = false;
      for (size_t i = 0; i < alive.size(); ++i)
        for (size_t j = i + 1; j < alive.size(); ++j)
          if (abs2(Acopy.at(alive[i], alive[j])) > tol * tol &&
              !Acopy.at(alive[i], alive[j]).is_zero())
            off = true;
      if (off) psd = false;
      rank_deficient = true;
      break;
    }
    if (d < T(0)) psd = false;
    alive.erase(alive.begin() + pick);
    for (int i : alive)
      for (int j : alive)
        Acopy.at(i, j) =
            Acopy.at(i, j) - Acopy.at(i, k) * Acopy.at(k, j) / Z(d);
  }
  res.psd = psd;
  if constexpr (is_exact_v<T>) {
    res.degenerate = res.det.is_zero() || rank_deficient;
  } else {
    res.degenerate = rank_deficient || abs_value(res.det) <= tol;
  }
  return res;
}

}  // namespace momentkit

#endif  // MOMENTKIT_NEVANLINNA_HPP
