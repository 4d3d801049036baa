#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "toricgw/rational.hpp"

using namespace toricgw;

TEST_CASE("rationals print reduced and parse back") {
  CHECK(to_string(make_rational(6, 4)) == "3/2");
  CHECK(to_string(make_rational(-8, 2)) == "-4");
  CHECK(to_string(make_rational(3, -9)) == "-1/3");
  CHECK_THROWS_AS(make_rational(1, 0), Error);
  CHECK(parse_rational("-10/4") == Rational(-5, 2));
  CHECK(parse_rational(" 7 ") == 7);
  CHECK(to_string(parse_rational("+12/8")) == "3/2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("integer powers") {
  CHECK(pow(Rational(1, 2), -2) == 4);
  CHECK(pow(Rational(5, 7), 0) == 1);
  CHECK(pow(Rational(-2, 3), 3) == Rational(-8, 27));
  CHECK(pow(Rational(0), 0) == 1);
  try {
    pow(Rational(0), -1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroToNegativePower);
  }
  for (long k = -4; k <= 4; ++k) CHECK(pow(Rational(-3, 5), k) * pow(Rational(-3, 5), -k) == 1);
}

TEST_CASE("exact arithmetic round trips") {
  for (long a = -5; a <= 5; ++a)
    for (long b = 1; b <= 5; ++b) {
      if (a == 0) continue;
      Rational x = make_rational(a, b);
      CHECK(x * inverse(x) == 1);
    }
  try {
    inverse(Rational(0));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegeneratePoint);
  }
}

TEST_CASE("linear form evaluation") {
  auto p3 = fixtures::point({5, 7, 11});
  CHECK(eval(LinearForm(3), p3) == 0);
  CHECK(LinearForm(3).is_zero());
  CHECK(eval(LinearForm({1, 0, -1}), p3) == -6);
  auto p5 = fixtures::point({1, 2, 3, 4, 5});
  CHECK(eval(LinearForm({1, -1, 0, 0, -3}, Rational(1, 2)), p5) == -8);
  CHECK(to_string(LinearForm({1, -1, 0, 0, -3}, Rational(1, 2))) == "(w1-w2-3*w5)/2");
  CHECK(LinearForm({2, 4}, Rational(1, 2)) == LinearForm({1, 2}));

  LinearForm f({1, 2, 0, -1, 3}), g({0, -1, 4, 2, 1}, Rational(1, 3));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto p = sample_point(5, seed, 1000);
    CHECK(eval(f + g, p) == eval(f, p) + eval(g, p));
    CHECK(eval(f - g, p) == eval(f, p) - eval(g, p));
  }
}

TEST_CASE("sampling is deterministic and distinct") {
  auto a = sample_point(3, 1, 1'000'000);
  auto b = sample_point(3, 1, 1'000'000);
  auto c = sample_point(3, 2, 1'000'000);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK(a.seed == 1);
  for (std::uint64_t seed = 1; seed < 50; ++seed) {
    auto p = sample_point(4, seed, 16);
    std::set<Rational> seen(p.values.begin(), p.values.end());
    CHECK(seen.size() == 4);
    for (const auto& v : p.values) CHECK((v >= 1 && v <= 16));
    CHECK(eval(LinearForm({1, -1, 0, 0}), p) != 0);
  }
  CHECK_THROWS_AS(sample_point(5, 1, 24), Error);
  auto big = sample_point(5, 3);
  for (const auto& v : big.values) CHECK((v >= 1 && v <= Rational(mpz_class("4611686018427387904"))));
}

TEST_CASE("constancy certification") {
  std::vector<Rational> same{3, 3, 3};
  CHECK(certify_constant(same) == 3);
  std::vector<Rational> twice{-45, -45};
  CHECK(certify_constant(twice) == -45);
  std::vector<Rational> differ{1, 2};
  try {
    certify_constant(differ);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotConstant);
  }
  std::vector<Rational> one{1};
  CHECK_THROWS_AS(certify_constant(one), Error);
}

TEST_CASE("evaluation skips degenerate points") {
  SamplingOptions opts;
  int calls = 0;
  auto cv = evaluate_certified(
      2,
      [&](const EvalPoint& p) -> Rational {
        ++calls;
        if (p.seed % 2 == 1) throw Error(ErrorCode::DegeneratePoint, "test");
        return 7;
      },
      opts);
  CHECK(cv.value == 7);
  CHECK(cv.seeds == std::vector<std::uint64_t>{2, 4, 6});
  CHECK(calls == 6);

  opts.max_attempts = 4;
  CHECK_THROWS_AS(evaluate_certified(2, [](const EvalPoint&) -> Rational { return inverse(Rational(0)); }, opts),
                  Error);
  CHECK_THROWS_AS(evaluate_certified(2, [](const EvalPoint& p) { return p.values[0]; }, SamplingOptions{}), Error);
}
