#include <catch2/catch_amalgamated.hpp>

#include "momentkit/io.hpp"

using namespace momentkit;
using R = Rational;

TEST_CASE("moment file parsing") {
  auto mf = parse_moment_file(
      R"({"kind":"stieltjes","moments":["1","1","2","6"],"label":"fact"})");
  CHECK(mf.kind == Kind::stieltjes);
  CHECK(mf.exact);
  CHECK(mf.label == "fact");
  auto seq = to_exact(mf);
  CHECK(seq.gamma == std::vector<R>{R(1), R(1), R(2), R(6)});

  auto mh = parse_moment_file(R"({"kind":"hamburger","moments":["1","0","1","0","3"]})");
  CHECK(to_exact(mh).gamma[4] == R(3));

  // decimal strings switch to float mode
  auto md = parse_moment_file(R"({"moments":["1.0","2.5"]})");
  CHECK_FALSE(md.exact);
  CHECK_THROWS_AS(to_exact(md), Error);
  auto fs = to_float(md);
  CHECK((fs.gamma[1] - BigFloat(Rational(5, 2))).abs().is_zero());

  // rationals parse exactly
  auto mq = parse_moment_file(R"({"moments":["2","4/3"]})");
  CHECK(to_exact(mq).gamma[1] == R(2, 3));
}

TEST_CASE("schema diagnostics") {
  CHECK_THROWS_MATCHES(parse_moment_file("nonsense"), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("SchemaError")));
  CHECK_THROWS_MATCHES(parse_moment_file(R"({"moments":"1"})"), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("moments")));
  CHECK_THROWS_MATCHES(parse_moment_file(R"({"moments":["1","x"]})"), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("moments[1]")));
  CHECK_THROWS_MATCHES(parse_moment_file(R"({"kind":"weird","moments":["1"]})"),
                       Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("kind")));
  CHECK_THROWS_MATCHES(parse_moment_file(R"({"moments":[]})"), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("EmptyInput")));
}

TEST_CASE("serialization round trip") {
  auto l = generate<R>(Family::laguerre, 6);
  auto doc = moment_sequence_to_json(l);
  auto back = to_exact(parse_moment_file(doc.dump()));
  CHECK(back.gamma == l.gamma);
  CHECK(back.kind == l.kind);
}

TEST_CASE("digest is stable and mode-sensitive") {
  auto l1 = generate<R>(Family::laguerre, 6);
  auto l2 = generate<R>(Family::laguerre, 6);
  CHECK(sequence_digest(l1) == sequence_digest(l2));
  auto h = generate<R>(Family::hermite, 6);
  CHECK(sequence_digest(l1) != sequence_digest(h));
}

TEST_CASE("scalar rendering") {
  CHECK(render_scalar(R(3, 4)) == "3/4");
  CHECK(render_scalar(R(-7)) == "-7");
  ScopedPrecision guard(128);
  std::string s = render_scalar(BigFloat(Rational(1, 2)));
  CHECK(s.substr(0, 3) == "5.0");
  CHECK(s.find("e-01") != std::string::npos);
}
