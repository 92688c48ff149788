#include <catch2/catch_amalgamated.hpp>

#include "momentkit/hankel.hpp"
#include "momentkit/orthopoly.hpp"

using namespace momentkit;
using R = Rational;

TEST_CASE("hankel determinants of the generator families") {
  auto h = generate<R>(Family::hermite, 8);
  auto hr = hankel_dets(h, 3);
  CHECK(hr.h[0] == R(1));
  CHECK(hr.h[1] == R(1));
  CHECK(hr.h[2] == R(1));
  CHECK(hr.h[3] == R(2));
  CHECK(hr.verdict == HankelVerdict::hamburger_ok);
  CHECK(hr.s[2] == R(-1));  // det [[0,1],[1,0]]
  CHECK(hr.first_s_failure == 1);  // s_1 = gamma_1 = 0 already fails

  auto l = generate<R>(Family::laguerre, 8);
  auto lr = hankel_dets(l, 3);
  CHECK(lr.h[2] == R(1));
  CHECK(lr.h[3] == R(4));
  CHECK(lr.s[2] == R(2));
  CHECK(lr.verdict == HankelVerdict::stieltjes_ok);
}

TEST_CASE("existence verdicts") {
  CHECK(existence_check(generate<R>(Family::hermite, 10)).verdict ==
        HankelVerdict::hamburger_ok);
  CHECK(existence_check(generate<R>(Family::laguerre, 10)).verdict ==
        HankelVerdict::stieltjes_ok);

  auto point = normalize(std::vector<R>{R(1), R(1), R(1), R(1)}, Kind::unknown);
  auto pr = existence_check(point);
  CHECK(pr.verdict == HankelVerdict::degenerate);
  CHECK(pr.first_h_failure == 2);

  // stieltjes claim refuted
  auto fake = normalize(std::vector<R>{R(1), R(0), R(1), R(0), R(3)},
                        Kind::stieltjes);
  CHECK(existence_check(fake).verdict == HankelVerdict::not_stieltjes);
}

TEST_CASE("float mode determinants track exact ones") {
  ScopedPrecision guard(256);
  auto lf = generate<BigFloat>(Family::laguerre, 12);
  auto rep = hankel_dets(lf, 5);
  auto le = generate<R>(Family::laguerre, 12);
  auto re = hankel_dets(le, 5);
  for (int j = 0; j <= 5; ++j) {
    BigFloat want(re.h[j]);
    CHECK((rep.h[j] - want).abs() <= want * BigFloat::pow2(-200));
  }
  CHECK_FALSE(rep.low_confidence);
}

TEST_CASE("aux determinants match their defining identities") {
  auto l = generate<R>(Family::laguerre, 24);
  int n = 5;
  auto aux = aux_dets(l, n);
  auto hs = hankel_dets(l, n + 2);
  auto rc = recursion_coeffs(l, n + 2);
  auto ev = monic_eval(rc, R(0), n + 2);

  // h~: partial sums of b via Theorem A.2(ii); h~_1 = gamma_1
  CHECK(aux.h_tilde[1] == l[1]);
  for (int k = 1; k <= n; ++k) {
    R sumb(0);
    for (int j = 0; j < k; ++j) sumb += rc.b[j];
    CHECK(sumb == aux.h_tilde[k] / hs.h[k]);
  }

  // t_n = -Q_n(0)/P_n(0) * s_n, all in rational form via monic values
  for (int k = 1; k <= n; ++k) {
    R lhs = -ev.q[k] / ev.p[k] * hs.s[k];
    CHECK(lhs == aux.t[k]);
  }

  // v_n / h_{n+1} = sum_{j<=n} P_j(0)^2 (Theorem A.6)
  CHECK(aux.v[1] == l[2]);
  for (int k = 0; k <= n; ++k) {
    R sum(0);
    for (int j = 0; j <= k; ++j) sum += ev.p[j] * ev.p[j] / ev.pi[j];
    CHECK(sum == aux.v[k] / hs.h[k + 1]);
  }

  // -w_{n+2} / h_{n+1} = sum_{j<=n} Q_j(0)^2
  for (int k = 0; k <= n; ++k) {
    R sum(0);
    for (int j = 0; j <= k; ++j) sum += ev.q[j] * ev.q[j] / ev.pi[j];
    CHECK(sum == -aux.w[k + 2] / hs.h[k + 1]);
  }

  // frozen small case: w_4 = -13 for the factorial moments
  CHECK(aux.w[4] == R(-13));

  // Theorem A.7 ratio: gamma_2^{-1} (sum P^2)(sum P^(2)^2) = y_{n-1}/h_{n+1}
  auto l2 = index_shift(l, 2);
  auto rc2 = recursion_coeffs(l2, n + 1);
  auto ev2 = monic_eval(rc2, R(0), n + 1);
  for (int k = 1; k <= n; ++k) {
    R sp(0), sp2(0);
    for (int j = 0; j <= k; ++j) sp += ev.p[j] * ev.p[j] / ev.pi[j];
    for (int j = 0; j <= k - 1; ++j) sp2 += ev2.p[j] * ev2.p[j] / ev2.pi[j];
    CHECK(sp * sp2 / l[2] == aux.y[k - 1] / hs.h[k + 1]);
  }
}

TEST_CASE("hermite b_0 from the h~ ratio") {
  auto h = generate<R>(Family::hermite, 8);
  auto aux = aux_dets(h, 2);
  CHECK(aux.h_tilde[1] == R(0));  // b_0 = h~_1/h_1 = 0
}

TEST_CASE("hankel positivity matches eigenvalue sign counts in float mode") {
  // h_N > 0 for all N iff the Hankel form is strictly positive definite;
  // compare against an LDL slicing count at 0 on the Hankel matrix itself
  ScopedPrecision guard(256);
  auto lf = generate<BigFloat>(Family::laguerre, 12);
  for (int N = 1; N <= 5; ++N) {
    auto m = hankel_matrix(lf, N, 0);
    // count negative eigenvalues via LDL pivots (dense, no pivoting needed
    // for a PD matrix)
    int negatives = 0;
    Matrix<BigFloat> a = m;
    for (int k = 0; k < N; ++k) {
      BigFloat d = a.at(k, k);
      if (d < BigFloat(0)) ++negatives;
      for (int i = k + 1; i < N; ++i)
        for (int j = k + 1; j < N; ++j)
          a.at(i, j) = a.at(i, j) - a.at(i, k) * a.at(k, j) / d;
    }
    CHECK(negatives == 0);
  }
}
