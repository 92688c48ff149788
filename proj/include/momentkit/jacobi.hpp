#ifndef MOMENTKIT_JACOBI_HPP
#define MOMENTKIT_JACOBI_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "momentkit/orthopoly.hpp"

namespace momentkit {

enum class Variant { F, K };

// N x N truncation of the Jacobi matrix. Variant F is the plain section;
// variant K has the corner shifted by alpha_{N-1} = -a_{N-1} P_N(0)/P_{N-1}(0)
// (rational in monic form: -p_N(0)/p_{N-1}(0)), which makes 0 an eigenvalue.
template <class T>
struct JacobiSection {
  int N = 0;
  Variant variant = Variant::F;
  std::vector<T> diag;   // N entries, corner already corrected for K
  std::vector<T> off2;   // N-1 entries a_j^2
  T alpha{};             // K only
  RecursionCoefficients<T> coeffs;  // prefix used to build the section
};

template <class T>
JacobiSection<T> section(const RecursionCoefficients<T>& rc, int N, Variant variant) {
  if (N < 1) raise(errc::too_short, "section needs N >= 1");
  rc.require_index(N, "section");
  JacobiSection<T> s;
  s.N = N;
  s.variant = variant;
  s.diag.assign(rc.b.begin(), rc.b.begin() + N);
  s.off2.assign(rc.a2.begin(), rc.a2.begin() + (N - 1));
  s.coeffs = rc;
  if (variant == Variant::K) {
    auto at0 = monic_eval(rc, T(0), N);
    if (at0.p[N].is_zero())
      raise(errc::krein_corner_undefined, "P_N(0) = 0 at N = " + std::to_string(N));
    if (at0.p[N - 1].is_zero())
      raise(errc::krein_corner_undefined, "P_{N-1}(0) = 0 at N = " + std::to_string(N));
    s.alpha = -at0.p[N] / at0.p[N - 1];
    if (!(s.alpha > T(0)))
      raise(errc::not_stieltjes, "alpha_{N-1} <= 0: section is not Stieltjes-positive");
    s.diag[N - 1] = s.diag[N - 1] - s.alpha;
    // consistency (b_N - alpha_N) alpha_{N-1} = a_{N-1}^2 when one more
    // coefficient is available
    if (rc.depth() > N && static_cast<int>(rc.a2.size()) > N - 1 &&
        !at0.p[N].is_zero()) {
      auto at0x = monic_eval(rc, T(0), N + 1);
      T alphaN = -at0x.p[N + 1] / at0x.p[N];
      T lhs = (rc.b[N] - alphaN) * s.alpha - rc.a2[N - 1];
      if constexpr (is_exact_v<T>) {
        if (!lhs.is_zero())
          raise(errc::cross_check_failure, "corner identity (5.5) violated");
      } else {
        BigFloat scale = abs_value(rc.a2[N - 1]) + BigFloat(1);
        if (abs_value(lhs) > scale * identity_tolerance(BigFloat::context_precision()))
          raise(errc::cross_check_failure, "corner identity violated beyond tolerance");
      }
    }
  }
  return s;
}

// Nodes and weights of the section's spectral measure: a desk-scale
// solution of the moment problem reproducing gamma_0..gamma_{2N-1} (F)
// resp. gamma_0..gamma_{2N-2} (K, which carries the built-in node 0).
template <class T>
struct Quadrature {
  std::vector<T> nodes;    // ascending
  std::vector<T> weights;  // positive, summing to 1
  Variant variant = Variant::F;
};

namespace detail {

// Number of eigenvalues of the section strictly below x, by the classical
// LDL^T slicing recurrence.
template <class T>
int slice_count(const JacobiSection<T>& s, const T& x) {
  int count = 0;
  T d(1);
  for (int i = 0; i < s.N; ++i) {
    T num = s.diag[i] - x;
    if (i > 0) num = num - s.off2[i - 1] / d;
    if (num.is_zero()) {
      // treat an exact hit as belonging to the lower half
      num = -BigFloat::pow2(-4 * BigFloat::context_precision()) *
            (abs_value(x) + T(1));
    }
    if (num < T(0)) ++count;
    d = num;
  }
  return count;
}

}  // namespace detail

template <class T>
Quadrature<T> eigensystem(const JacobiSection<T>& s) {
  static_assert(!is_exact_v<T>, "eigensystem is a float-mode operation");
  const int N = s.N;
  long p = BigFloat::context_precision();

  // Gershgorin enclosure of the spectrum
  std::vector<T> a(N + 1, T(0));  // a_{-1} = a_{N-1} = 0 at the edges
  for (int i = 0; i + 1 < N; ++i) a[i + 1] = s.off2[i].sqrt();
  T lo = s.diag[0], hi = s.diag[0];
  for (int i = 0; i < N; ++i) {
    T l = s.diag[i] - a[i] - a[i + 1];
    T h = s.diag[i] + a[i] + a[i + 1];
    if (l < lo) lo = l;
    if (h > hi) hi = h;
  }
  T span = hi - lo;
  if (span.is_zero()) span = T(1);
  lo = lo - span * BigFloat::pow2(-8);
  hi = hi + span * BigFloat::pow2(-8);

  // bisection on the slice count, one eigenvalue at a time
  Quadrature<T> quad;
  quad.variant = s.variant;
  long iters = p + 80;
  for (int i = 0; i < N; ++i) {
    T l = lo, h = hi;
    for (long it = 0; it < iters; ++it) {
      T mid = (l + h) / T(2);
      if (detail::slice_count(s, mid) >= i + 1) h = mid;
      else l = mid;
      if (h - l <= (abs_value(mid) + T(1)) * BigFloat::pow2(-(p + 16))) break;
    }
    T node = (l + h) / T(2);
    // one Newton polish on the monic characteristic value, kept in bracket
    {
      // evaluate monic char poly of the section and its derivative at node
      T val(1), valp(0), prev(1), prevp(0);
      T vm1(0), vm1p(0);
      for (int k = 0; k < N; ++k) {
        T nv = (node - s.diag[k]) * val - (k > 0 ? s.off2[k - 1] : T(0)) * vm1;
        T nvp = val + (node - s.diag[k]) * valp - (k > 0 ? s.off2[k - 1] : T(0)) * vm1p;
        vm1 = val;
        vm1p = valp;
        val = nv;
        valp = nvp;
      }
      if (!valp.is_zero()) {
        T cand = node - val / valp;
        if (cand > l && cand < h) node = cand;
      }
    }
    quad.nodes.push_back(node);
  }

  // variant K carries 0 as an eigenvalue by construction: snap it
  if (s.variant == Variant::K) {
    int imin = 0;
    for (int i = 1; i < N; ++i)
      if (abs_value(quad.nodes[i]) < abs_value(quad.nodes[imin])) imin = i;
    if (abs_value(quad.nodes[imin]) > span * abort_tolerance(p))
      raise(errc::convergence_failure, "zero eigenvalue of the Krein section not found");
    quad.nodes[imin] = T(0);
  }

  // Christoffel weights 1 / sum_{j<N} P_j(lambda)^2, cross-checked against
  // the residue form Q_N/P_N' (F) or N_N/M_N' (K)
  auto at0 = monic_eval(s.coeffs, T(0), N);
  T wsum(0);
  for (int i = 0; i < N; ++i) {
    auto evn = monic_eval(s.coeffs, quad.nodes[i], N);
    T chr(0);
    for (int j = 0; j < N; ++j) chr = chr + evn.p[j] * evn.p[j] / evn.pi[j];
    T w = T(1) / chr;
    // residue form via differentiated recurrence
    T pd(0), qd(0), pm1d(0), qm1d(0);
    {
      T pm1(0), qm1(-1), pp(1), qq(0);
      for (int n = 0; n < N; ++n) {
        T a2n1 = n >= 1 ? s.coeffs.a2[n - 1] : T(1);
        T x = quad.nodes[i];
        T pn = (x - s.coeffs.b[n]) * pp - a2n1 * pm1;
        T pnd = pp + (x - s.coeffs.b[n]) * pd - a2n1 * pm1d;
        T qn = (x - s.coeffs.b[n]) * qq - a2n1 * qm1;
        T qnd = qq + (x - s.coeffs.b[n]) * qd - a2n1 * qm1d;
        pm1 = pp; pm1d = pd; qm1 = qq; qm1d = qd;
        pp = pn; pd = pnd; qq = qn; qd = qnd;
      }
      T resw;
      if (s.variant == Variant::F) {
        resw = qq / pd;
      } else {
        T ratio = at0.p[N] / at0.p[N - 1];
        T mval = pp - ratio * pm1;   // unused except derivative check
        (void)mval;
        T mder = pd - ratio * pm1d;
        T nval = qq - ratio * qm1;
        resw = nval / mder;
      }
      if (abs_value(resw / w - T(1)) > abort_tolerance(p))
        raise(errc::convergence_failure,
              "residue and Christoffel weights disagree (conditioning)");
    }
    if (!(w > T(0)))
      raise(errc::convergence_failure, "nonpositive quadrature weight");
    quad.weights.push_back(w);
    wsum = wsum + w;
  }
  if (abs_value(wsum - T(1)) > abort_tolerance(p))
    raise(errc::convergence_failure, "quadrature weights do not sum to gamma_0");
  return quad;
}

// sum nu_i lambda_i^j, for checking moment reproduction
template <class T>
T quadrature_moment(const Quadrature<T>& q, int j) {
  T acc(0);
  for (size_t i = 0; i < q.nodes.size(); ++i) {
    T pw(1);
    for (int k = 0; k < j; ++k) pw = pw * q.nodes[i];
    acc = acc + q.weights[i] * pw;
  }
  return acc;
}

// sum nu_i |lambda_i|^j, the cancellation-free scale of the same sum
template <class T>
T quadrature_moment_abs_scale(const Quadrature<T>& q, int j) {
  T acc(0);
  for (size_t i = 0; i < q.nodes.size(); ++i) {
    T pw(1);
    for (int k = 0; k < j; ++k) pw = pw * abs_value(q.nodes[i]);
    acc = acc + q.weights[i] * pw;
  }
  return acc;
}

// Resolvent matrix element of the section at z: f^-_N = -Q_N/P_N for F,
// f^+_N = -N_N/M_N for K. Exact for rational z in exact mode.
template <class T, class Z>
Z resolvent(const JacobiSection<T>& s, const Z& z) {
  if (s.variant == Variant::F) {
    auto ev = monic_eval(s.coeffs, z, s.N);
    if (ev.p[s.N].is_zero()) raise(errc::pole_hit, "z is a node of the F section");
    return -ev.q[s.N] / ev.p[s.N];
  }
  auto [m, n] = monic_MN(s.coeffs, z, s.N);
  if (m.is_zero()) raise(errc::pole_hit, "z is a node of the K section");
  return -n / m;
}

// gamma_n = <delta_0, A^n delta_0> by iterated tridiagonal application in
// the monic basis, where the matrix has unit superdiagonal and a_j^2
// subdiagonal; exact in exact mode. Valid through n = 2*depth - 1.
template <class T>
MomentSequence<T> moments_from_jacobi(const RecursionCoefficients<T>& rc, int K) {
  int depth = rc.depth();
  if (K > 2 * depth - 1)
    raise(errc::too_short, "finite section supports moments only through 2N-1");
  MomentSequence<T> seq;
  seq.kind = Kind::unknown;
  seq.label = "from_jacobi";
  std::vector<T> v(depth, T(0));
  v[0] = T(1);
  seq.gamma.push_back(T(1));
  std::vector<T> nv(depth, T(0));
  for (int n = 1; n <= K; ++n) {
    for (int j = 0; j < depth; ++j) {
      T acc = rc.b[j] * v[j];
      if (j > 0) acc = acc + v[j - 1];
      if (j + 1 < depth && j < static_cast<int>(rc.a2.size()))
        acc = acc + rc.a2[j] * v[j + 1];
      nv[j] = acc;
    }
    std::swap(v, nv);
    seq.gamma.push_back(v[0]);
  }
  return seq;
}

// Coefficients of the index-0 stripped problem gamma^(0) (top row and left
// column removed): a^(0)_n = a_{n+1}, b^(0)_n = b_{n+1}. Its first-kind
// monic polynomials coincide with q_{n+1} of the original.
template <class T>
RecursionCoefficients<T> strip(const RecursionCoefficients<T>& rc) {
  if (rc.depth() < 2) raise(errc::too_short, "strip needs depth >= 2");
  RecursionCoefficients<T> out;
  out.b.assign(rc.b.begin() + 1, rc.b.end());
  out.a2.assign(rc.a2.begin() + 1, rc.a2.end());
  return out;
}

}  // namespace momentkit

#endif  // MOMENTKIT_JACOBI_HPP
