#include <catch2/catch_amalgamated.hpp>

#include "momentkit/bigfloat.hpp"
#include "momentkit/complex.hpp"
#include "momentkit/matrix.hpp"
#include "momentkit/polynomial.hpp"
#include "momentkit/rational.hpp"

using namespace momentkit;

TEST_CASE("rational basics") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a * b == Rational(1, 18));
  CHECK(a - b == b);
  CHECK(a / b == Rational(2));
  CHECK(Rational::from_string("-4/6") == Rational(-2, 3));
  CHECK(Rational::from_string("7").is_integer());
  CHECK(Rational(3, 4).to_string() == "3/4");
  CHECK_THROWS_AS(Rational::from_string("1/0"), Error);
  CHECK_THROWS_AS(a / Rational(0), Error);
  CHECK(factorial(5) == Rational(120));
  CHECK(binomial(7, 3) == Rational(35));
}

TEST_CASE("bigfloat context precision and arithmetic") {
  ScopedPrecision guard(128);
  CHECK(BigFloat::context_precision() == 128);
  BigFloat x(Rational(1, 3));
  BigFloat three(3);
  BigFloat err = (x * three - BigFloat(1)).abs();
  CHECK(err < BigFloat::pow2(-120));
  {
    ScopedPrecision inner(256);
    CHECK(BigFloat::context_precision() == 256);
  }
  CHECK(BigFloat::context_precision() == 128);
  CHECK(BigFloat(2).sqrt() * BigFloat(2).sqrt() - BigFloat(2) <
        BigFloat::pow2(-120));
  CHECK(BigFloat(1).exp().log() - BigFloat(1) < BigFloat::pow2(-120));
}

TEST_CASE("complex arithmetic over both backends") {
  ComplexRational z(Rational(1), Rational(2));
  CHECK(z * z.conj() == ComplexRational(Rational(5)));
  CHECK((z / z) == ComplexRational(Rational(1)));
  ComplexBigFloat w(BigFloat(1), BigFloat(1));
  CHECK((w * w).re.is_zero());
  CHECK(abs2(z) == Rational(5));
}

TEST_CASE("polynomial arithmetic and division") {
  using P = Polynomial<Rational>;
  P x = P::x();
  P p = x * x - P::constant(Rational(1));  // x^2 - 1
  P d = x - P::constant(Rational(1));
  auto [q, r] = P::divmod(p, d);
  CHECK(r.is_zero());
  CHECK(q.eval(Rational(5)) == Rational(6));
  CHECK(p.derivative().eval(Rational(3)) == Rational(6));
  auto rec = series_reciprocal(std::vector<Rational>{Rational(1), Rational(1)}, 4);
  CHECK(rec[4] == Rational(1));  // 1/(1+z) = 1 - z + z^2 - ...
  CHECK(rec[3] == Rational(-1));
}

TEST_CASE("bareiss and LU determinants agree") {
  Matrix<Rational> m(3, 3);
  int vals[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = Rational(vals[i][j]);
  CHECK(bareiss_det(m) == Rational(18));

  Matrix<BigFloat> mf(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mf.at(i, j) = BigFloat(vals[i][j]);
  auto lu = lu_det(mf);
  CHECK((lu.det - BigFloat(18)).abs() < BigFloat::pow2(-200));

  // singular matrix
  Matrix<Rational> s(2, 2);
  s.at(0, 0) = Rational(1); s.at(0, 1) = Rational(2);
  s.at(1, 0) = Rational(2); s.at(1, 1) = Rational(4);
  CHECK(bareiss_det(s).is_zero());
}

TEST_CASE("linear solve, exact and complex") {
  Matrix<Rational> a(2, 2);
  a.at(0, 0) = Rational(2); a.at(0, 1) = Rational(1);
  a.at(1, 0) = Rational(1); a.at(1, 1) = Rational(3);
  auto x = solve_linear(a, std::vector<Rational>{Rational(5), Rational(10)});
  CHECK(x[0] == Rational(1));
  CHECK(x[1] == Rational(3));

  Matrix<ComplexRational> c(1, 1);
  c.at(0, 0) = ComplexRational(Rational(0), Rational(1));
  auto xc = solve_linear(c, std::vector<ComplexRational>{
                                ComplexRational(Rational(1))});
  CHECK(xc[0] == ComplexRational(Rational(0), Rational(-1)));
}
