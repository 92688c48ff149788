#include <catch2/catch_amalgamated.hpp>

#include "momentkit/integrate.hpp"
#include "momentkit/jacobi.hpp"

using namespace momentkit;
using R = Rational;

TEST_CASE("section construction") {
  auto l = generate<R>(Family::laguerre, 12);
  auto rc = recursion_coeffs(l, 5);

  auto f2 = section(rc, 2, Variant::F);
  CHECK(f2.diag == std::vector<R>{R(1), R(3)});
  CHECK(f2.off2 == std::vector<R>{R(1)});

  auto k2 = section(rc, 2, Variant::K);
  CHECK(k2.alpha == R(2));
  CHECK(k2.diag == std::vector<R>{R(1), R(1)});
  // determinant of [[1,1],[1,1]] is zero
  CHECK(k2.diag[0] * k2.diag[1] - k2.off2[0] == R(0));

  auto k1 = section(rc, 1, Variant::K);
  CHECK(k1.alpha == rc.b[0]);
  CHECK(k1.diag == std::vector<R>{R(0)});

  auto h = generate<R>(Family::hermite, 12);
  auto rch = recursion_coeffs(h, 5);
  CHECK_THROWS_MATCHES(section(rch, 2, Variant::K), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("KreinCornerUndefined")));
}

TEST_CASE("eigensystem: frozen small cases") {
  ScopedPrecision guard(256);
  BigFloat tol = BigFloat::pow2(-230);

  auto h = generate<BigFloat>(Family::hermite, 12);
  auto rch = recursion_coeffs(h, 6);
  auto qh = eigensystem(section(rch, 2, Variant::F));
  CHECK((qh.nodes[0] + BigFloat(1)).abs() < tol);
  CHECK((qh.nodes[1] - BigFloat(1)).abs() < tol);
  CHECK((qh.weights[0] - BigFloat(Rational(1, 2))).abs() < tol);
  CHECK((qh.weights[1] - BigFloat(Rational(1, 2))).abs() < tol);

  auto l = generate<BigFloat>(Family::laguerre, 12);
  auto rcl = recursion_coeffs(l, 6);
  auto q1 = eigensystem(section(rcl, 1, Variant::F));
  CHECK((q1.nodes[0] - BigFloat(1)).abs() < tol);
  CHECK((q1.weights[0] - BigFloat(1)).abs() < tol);

  auto qk = eigensystem(section(rcl, 2, Variant::K));
  CHECK(qk.nodes[0].is_zero());
  CHECK((qk.nodes[1] - BigFloat(2)).abs() < tol);
  CHECK((qk.weights[0] - BigFloat(Rational(1, 2))).abs() < tol);
  CHECK((qk.weights[1] - BigFloat(Rational(1, 2))).abs() < tol);
}

TEST_CASE("quadrature reproduces the moment prefix") {
  ScopedPrecision guard(256);
  for (auto fam : {Family::hermite, Family::laguerre}) {
    auto s = generate<BigFloat>(fam, 26);
    for (int N : {3, 8, 12}) {
      auto rc = recursion_coeffs(s, N + 1);
      auto quad = eigensystem(section(rc, N, Variant::F));
      for (int j = 0; j < 2 * N && j <= s.max_index(); ++j) {
        BigFloat got = quadrature_moment(quad, j);
        BigFloat scale = quadrature_moment_abs_scale(quad, j);
        BigFloat denom = s[j].abs() > scale ? s[j].abs() : scale;
        if (denom.is_zero()) denom = BigFloat(1);
        CHECK((got - s[j]).abs() <= denom * BigFloat::pow2(-200));
      }
      for (const auto& w : quad.weights) CHECK(w > BigFloat(0));
      BigFloat wsum(0);
      for (const auto& w : quad.weights) wsum += w;
      CHECK((wsum - BigFloat(1)).abs() < BigFloat::pow2(-230));
    }
  }
}

TEST_CASE("krein quadrature matches only through 2N-2") {
  ScopedPrecision guard(256);
  auto l = generate<BigFloat>(Family::laguerre, 12);
  int N = 3;
  auto rc = recursion_coeffs(l, N + 1);
  auto quad = eigensystem(section(rc, N, Variant::K));
  for (int j = 0; j <= 2 * N - 2; ++j) {
    BigFloat got = quadrature_moment(quad, j);
    CHECK((got - l[j]).abs() <= (l[j].abs() + BigFloat(1)) * BigFloat::pow2(-200));
  }
  // the 2N-1 moment is genuinely missed
  BigFloat missed = (quadrature_moment(quad, 2 * N - 1) - l[2 * N - 1]).abs();
  CHECK(missed > BigFloat(1e-3));
}

TEST_CASE("interlacing of F nodes") {
  ScopedPrecision guard(256);
  auto l = generate<BigFloat>(Family::laguerre, 30);
  for (int N = 1; N <= 8; ++N) {
    auto rca = recursion_coeffs(l, N + 1);
    auto qa = eigensystem(section(rca, N, Variant::F));
    auto qb = eigensystem(section(rca, N + 1, Variant::F));
    for (int i = 0; i < N; ++i) {
      CHECK(qb.nodes[i] < qa.nodes[i]);
      CHECK(qa.nodes[i] < qb.nodes[i + 1]);
    }
  }
}

TEST_CASE("krein section kernel vector") {
  ScopedPrecision guard(256);
  auto l = generate<BigFloat>(Family::laguerre, 22);
  int N = 6;
  auto rc = recursion_coeffs(l, N + 1);
  auto sec = section(rc, N, Variant::K);
  auto ev = ortho_eval(rc, BigFloat(0), N - 1);
  std::vector<BigFloat> a;
  for (int i = 0; i + 1 < N; ++i) a.push_back(sec.off2[i].sqrt());
  BigFloat scale(0);
  for (const auto& v : ev.P) scale += v.abs();
  for (int j = 0; j < N; ++j) {
    BigFloat acc = sec.diag[j] * ev.P[j];
    if (j > 0) acc += a[j - 1] * ev.P[j - 1];
    if (j + 1 < N) acc += a[j] * ev.P[j + 1];
    CHECK(acc.abs() <= scale * BigFloat::pow2(-(256 - 16)));
  }
}

TEST_CASE("resolvents: values, monotonicity, sandwich") {
  auto l = generate<R>(Family::laguerre, 34);
  auto rc = recursion_coeffs(l, 16);

  // f^-_1(z) = 1/(b_0 - z)
  auto s1 = section(rc, 1, Variant::F);
  CHECK(resolvent(s1, R(-1)) == R(1, 2));

  // monotone up in N at z = -x, x > 0
  for (R x : {R(1, 2), R(1), R(3)}) {
    R prev(0);
    for (int N = 1; N <= 15; ++N) {
      R cur = resolvent(section(rc, N, Variant::F), -x);
      CHECK(cur > prev);
      prev = cur;
    }
    // K-resolvents decrease
    R prevK = resolvent(section(rc, 1, Variant::K), -x);
    for (int N = 2; N <= 15; ++N) {
      R curK = resolvent(section(rc, N, Variant::K), -x);
      CHECK(curK < prevK);
      prevK = curK;
    }
  }

  // sandwich at x = 1 around the true Stieltjes integral
  ScopedPrecision guard(256);
  BigFloat truth = quad_tanh_sinh(
      [](const BigFloat& t) { return (-t).exp() / (BigFloat(1) + t); },
      BigFloat(0), BigFloat(200), BigFloat::pow2(-140));
  for (int N = 2; N <= 12; ++N) {
    BigFloat lo(resolvent(section(rc, N, Variant::F), R(-1)));
    BigFloat hi(resolvent(section(rc, N, Variant::K), R(-1)));
    CHECK(lo <= truth);
    CHECK(truth <= hi);
  }
}

TEST_CASE("pole detection") {
  auto l = generate<R>(Family::laguerre, 8);
  auto rc = recursion_coeffs(l, 2);
  auto s1 = section(rc, 1, Variant::F);
  CHECK_THROWS_MATCHES(resolvent(s1, R(1)), Error,  // b_0 = 1 is the node
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("PoleHit")));
}

TEST_CASE("moments from jacobi and round trips") {
  RecursionCoefficients<R> free;
  free.b = {R(0), R(0)};
  free.a2 = {R(1)};
  auto fm = moments_from_jacobi(free, 3);
  CHECK(fm.gamma == std::vector<R>{R(1), R(0), R(1), R(0)});

  auto h = generate<R>(Family::hermite, 10);
  auto rch = recursion_coeffs(h, 5);
  auto hm = moments_from_jacobi(rch, 8);
  for (int j = 0; j <= 8; ++j) CHECK(hm.gamma[j] == h[j]);

  auto l = generate<R>(Family::laguerre, 14);
  auto rcl = recursion_coeffs(l, 4);
  auto lm = moments_from_jacobi(rcl, 6);
  for (int j = 0; j <= 6; ++j) CHECK(lm.gamma[j] == l[j]);

  // moments -> coeffs -> moments is the identity (K <= 12)
  for (auto fam : {Family::hermite, Family::laguerre}) {
    auto s = generate<R>(fam, 13);
    auto rc = recursion_coeffs(s, 7);
    auto back = moments_from_jacobi(rc, 12);
    for (int j = 0; j <= 12; ++j) CHECK(back.gamma[j] == s[j]);
  }

  CHECK_THROWS_AS(moments_from_jacobi(rcl, 8), Error);
}

TEST_CASE("stripped problem identities") {
  auto l = generate<R>(Family::laguerre, 34);
  auto rc = recursion_coeffs(l, 16);
  auto st = strip(rc);
  CHECK(st.b[0] == R(3));
  CHECK(st.b[1] == R(5));
  CHECK(st.a2[0] == R(4));
  CHECK(st.a2[1] == R(9));

  // p^(0)_N(z) = q_{N+1}(z), exactly, for several z
  for (R z : {R(0), R(1), R(-2), R(1, 3)}) {
    auto evs = monic_eval(st, z, 10);
    auto ev = monic_eval(rc, z, 11);
    for (int n = 0; n <= 10; ++n) CHECK(evs.p[n] == ev.q[n + 1]);
  }

  // P^(0)_1 check from the worked example: q_2(0) = -3 so
  // a_0 Q_2(0) = -3 aligns with the monic value directly
  auto ev0 = monic_eval(rc, R(0), 2);
  CHECK(ev0.q[2] == R(-3));

  // Ricatti identity -1/f^-_{N+1}(z) = z - b_0 + a_0^2 f^(0)_N(z), exact
  for (R z : {R(-1), R(-3), R(1, 2)}) {
    for (int N = 1; N <= 10; ++N) {
      R f = resolvent(section(rc, N + 1, Variant::F), z);
      R f0 = resolvent(section(st, N, Variant::F), z);
      CHECK(-R(1) / f == z - rc.b[0] + rc.a2[0] * f0);
    }
  }

  // double strip consistency through the moment map
  auto st2 = strip(st);
  auto m2 = moments_from_jacobi(st2, 6);
  auto direct = strip(strip(rc));
  auto m2b = moments_from_jacobi(direct, 6);
  CHECK(m2.gamma == m2b.gamma);
}
