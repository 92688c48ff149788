#include <catch2/catch_amalgamated.hpp>

#include "momentkit/integrate.hpp"
#include "momentkit/pade.hpp"

using namespace momentkit;
using R = Rational;

TEST_CASE("frozen values for the factorial series") {
  auto l = generate<R>(Family::laguerre, 36);

  CHECK(pade_value(l, 0, 1, R(1)).value == R(1, 2));
  CHECK(pade_value(l, 1, 1, R(1)).value == R(2, 3));
  CHECK(pade_value(l, 0, 0, R(1)).value == R(1));
  CHECK(pade_value(l, 0, 0, R(17)).value == R(1));

  // [1,1] is (1+z)/(1+2z): check the polynomials themselves
  auto ap = pade_approximant(l, 1, 1);
  CHECK(ap.num.coeffs() == std::vector<R>{R(1), R(1)});
  CHECK(ap.den.coeffs() == std::vector<R>{R(1), R(2)});

  // [2,1] derived by hand: (1 + 2z - z^2)/(1 + 3z)
  auto ap21 = pade_approximant(l, 2, 1);
  CHECK(ap21.num.coeffs() == std::vector<R>{R(1), R(2), R(-1)});
  CHECK(ap21.den.coeffs() == std::vector<R>{R(1), R(3)});

  // [0,2] derived by hand: 1/(1 + z - z^2)
  auto ap02 = pade_approximant(l, 0, 2);
  CHECK(ap02.num.coeffs() == std::vector<R>{R(1)});
  CHECK(ap02.den.coeffs() == std::vector<R>{R(1), R(1), R(-1)});
}

TEST_CASE("every supported shape matches the linear-solve oracle") {
  auto l = generate<R>(Family::laguerre, 40);
  for (int M = 0; M <= 6; ++M) {
    for (int d = -3; d <= 3; ++d) {
      int N = M + d;
      if (N < 0) continue;
      auto ap = pade_approximant(l, N, M);
      auto lin = pade_by_linear_solve(l, N, M);
      REQUIRE(ap.exists);
      REQUIRE(lin.has_value());
      // same rational function: cross-multiplied equality
      CHECK((ap.num * lin->den - lin->num * ap.den).is_zero());
    }
  }
}

TEST_CASE("taylor match order is at least N+M+1") {
  for (auto fam : {Family::hermite, Family::laguerre}) {
    auto s = generate<R>(fam, 40);
    for (int M = 0; M <= 6; ++M) {
      for (int d = -3; d <= 3; ++d) {
        int N = M + d;
        if (N < 0 || N + M > 12) continue;
        // even series: shapes with even offset exist only for even M
        // (the P^(d)_M(0) gate of the shifted problem)
        if (fam == Family::hermite && d % 2 == 0 && M % 2 == 1) continue;
        INFO("family " << (fam == Family::hermite ? "hermite" : "laguerre")
                       << " shape [" << N << "," << M << "]");
        CHECK(taylor_match_check(s, N, M) >= N + M + 1);
      }
    }
  }
}

TEST_CASE("spot-checked mismatch orders") {
  auto l = generate<R>(Family::laguerre, 20);
  CHECK(taylor_match_check(l, 0, 1) == 2);  // 1/(1+z) = 1 - z + z^2 - ...
  CHECK(taylor_match_check(l, 1, 1) == 3);
}

TEST_CASE("diagonal existence gate on even series") {
  auto h = generate<R>(Family::hermite, 30);
  for (int M = 1; M <= 9; M += 2) {
    auto ap = pade_approximant(h, M, M);
    CHECK_FALSE(ap.exists);  // P_M(0) = 0 for odd M
    CHECK_THROWS_MATCHES(taylor_match_check(h, M, M), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("NotExists")));
  }
  for (int M = 0; M <= 8; M += 2) CHECK(pade_approximant(h, M, M).exists);
  // requesting the failing diagonal never silently returns the lower one
  auto v = pade_value(h, 3, 3, R(1, 4));
  CHECK_FALSE(v.exists);
}

TEST_CASE("hermite off-diagonals exist and match") {
  auto h = generate<R>(Family::hermite, 40);
  int checked = 0;
  for (int M = 1; M <= 5; ++M) {
    for (int d : {-3, -2, -1, 1, 2, 3}) {
      int N = M + d;
      if (N < 0 || (M < 2 && d <= -2)) continue;
      auto ap = pade_approximant(h, N, M);
      // even-offset shapes with odd M hit the P^(d)_M(0) = 0 gate
      CHECK(ap.exists == (d % 2 != 0 || M % 2 == 0));
      if (!ap.exists) continue;
      auto lin = pade_by_linear_solve(h, N, M);
      if (lin) {
        CHECK((ap.num * lin->den - lin->num * ap.den).is_zero());
        ++checked;
      }
    }
  }
  CHECK(checked >= 12);
}

TEST_CASE("monotone chains and bracket for the factorial series") {
  auto l = generate<R>(Family::laguerre, 36);
  for (R x : {R(1, 2), R(1), R(3)}) {
    // strict monotone chains, checked exactly
    R prevF, prevD;
    for (int N = 1; N <= 15; ++N) {
      R f = pade_value(l, N - 1, N, x).value;
      R g = pade_value(l, N, N, x).value;
      if (N > 1) {
        CHECK(f > prevF);
        CHECK(g < prevD);
      }
      CHECK(f < g);
      prevF = f;
      prevD = g;
    }
  }

  // bracket around the true value at x = 1, width < 1e-3 by N = 15
  ScopedPrecision guard(256);
  BigFloat truth = quad_tanh_sinh(
      [](const BigFloat& t) { return (-t).exp() / (BigFloat(1) + t); },
      BigFloat(0), BigFloat(220), BigFloat::pow2(-160));
  BigFloat lo(pade_value(l, 14, 15, R(1)).value);
  BigFloat hi(pade_value(l, 15, 15, R(1)).value);
  CHECK(lo <= truth);
  CHECK(truth <= hi);
  CHECK(hi - lo < BigFloat(1e-3));
}

TEST_CASE("pade_table output") {
  auto l = generate<R>(Family::laguerre, 36);
  auto table = pade_table(l, R(1), 10, {-1, 0, 1});
  REQUIRE(table.rows.size() == 3);
  CHECK(table.warnings.empty());
  CHECK(table.bracket_valid);
  CHECK(table.bracket_N == 10);
  CHECK(table.bracket_lo < table.bracket_hi);
  // row for shape 0 is the F chain starting at f^{[0,1]}(1) = 1/2
  const auto& row0 = table.rows[1];
  CHECK(row0[0].value == R(1, 2));

  // x = 0: every approximant equals 1
  auto t0 = pade_table(l, R(0), 6, {0, 1});
  for (const auto& row : t0.rows)
    for (const auto& cell : row)
      if (cell.exists) CHECK(cell.value == R(1));

  // non-stieltjes input warns but still emits values
  auto h = generate<R>(Family::hermite, 30);
  auto th = pade_table(h, R(1), 6, {0, 1});
  REQUIRE_FALSE(th.warnings.empty());
  CHECK(th.warnings[0].find("not stieltjes") != std::string::npos);

  CHECK_THROWS_MATCHES(pade_table(l, R(1), 4, {7}), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("UnsupportedShape")));
}

TEST_CASE("lognormal bracket stabilizes to a positive width") {
  ScopedPrecision guard(256);
  auto ln = generate<BigFloat>(Family::lognormal, 52);
  std::vector<BigFloat> widths;
  for (int N : {10, 15, 20, 25}) {
    BigFloat lo = pade_value(ln, N - 1, N, BigFloat(1)).value;
    BigFloat hi = pade_value(ln, N, N, BigFloat(1)).value;
    widths.push_back(hi - lo);
    CHECK(hi > lo);
  }
  // width decreases but flattens out at a strictly positive limit
  CHECK(widths.back() > BigFloat(0));
  CHECK(widths.back() > widths[0] * BigFloat(Rational(1, 2)));
}

TEST_CASE("pole of an approximant is reported") {
  auto l = generate<R>(Family::laguerre, 12);
  // [0,1] = 1/(1+z) has a pole at z = -1
  CHECK_THROWS_MATCHES(pade_value(l, 0, 1, R(-1)), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("PoleHit")));
}
