#include <doctest.h>

#include "fixtures.hpp"

using namespace toricgw;
using fixtures::cone;
using fixtures::fan;
using fixtures::mono;

namespace {

const std::vector<std::string> kAllFans{"p1", "p2", "p3", "f1", "bundle_m2", "bundle_m3"};

ErrorCode validation_error(FanInput in) {
  try {
    validate_fan(std::move(in));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("fan was accepted");
  return ErrorCode::InvalidArgument;
}

FanInput p2_input() {
  FanInput in;
  in.dim = 2;
  in.rays = {{1, 0}, {0, 1}, {-1, -1}};
  in.max_cones = {{0, 1}, {1, 2}, {0, 2}};
  return in;
}

// Solves v_l1 + v_l2 + sum_{i in tau} a_i v_i = 0 by search over small integers.
std::optional<CurveClass> brute_force_wall_class(const SmoothToricVariety& x, const Wall& w) {
  const auto& rays = x.input().rays;
  const int k = static_cast<int>(w.tau_rays.size());
  std::vector<long> a(k, -8);
  while (true) {
    bool zero = true;
    for (int c = 0; c < x.dim(); ++c) {
      long s = rays[w.l1][c] + rays[w.l2][c];
      for (int i = 0; i < k; ++i) s += a[i] * rays[w.tau_rays[i]][c];
      if (s != 0) zero = false;
    }
    if (zero) {
      CurveClass out(IntVector(x.num_rays(), 0));
      out.components[w.l1] = out.components[w.l2] = 1;
      for (int i = 0; i < k; ++i) out.components[w.tau_rays[i]] = a[i];
      return out;
    }
    int i = 0;
    while (i < k && a[i] == 8) a[i++] = -8;
    if (i == k) return std::nullopt;
    ++a[i];
  }
}

}  // namespace

TEST_CASE("projective plane validates with one primitive collection") {
  auto x = validate_fan(p2_input());
  CHECK(x.num_cones() == 3);
  CHECK(x.walls().size() == 3);
  CHECK(x.primitive_collections() == std::vector<std::vector<int>>{{0, 1, 2}});
}

TEST_CASE("Hirzebruch surface primitive collections") {
  auto x = fan("f1");
  CHECK(x.primitive_collections() == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
  CHECK(x.walls().size() == 4);
}

TEST_CASE("invalid fans are rejected with the right error") {
  auto singular = p2_input();
  singular.rays[2] = {-1, -2};
  CHECK(validation_error(singular) == ErrorCode::NonUnimodularCone);

  auto dangling = p2_input();
  dangling.max_cones.pop_back();
  CHECK(validation_error(dangling) == ErrorCode::DanglingWall);

  auto duplicate = p2_input();
  duplicate.max_cones.push_back({1, 0});
  CHECK(validation_error(duplicate) == ErrorCode::DuplicateCone);

  auto non_primitive = p2_input();
  non_primitive.rays[0] = {2, 0};
  CHECK(validation_error(non_primitive) == ErrorCode::NonPrimitiveRay);

  auto short_cone = p2_input();
  short_cone.max_cones[0] = {0};
  CHECK(validation_error(short_cone) == ErrorCode::MalformedFan);

  auto repeated = p2_input();
  repeated.max_cones[0] = {1, 1};
  CHECK(validation_error(repeated) == ErrorCode::MalformedFan);
}

TEST_CASE("projective space weights are coordinate differences") {
  for (const char* name : {"p1", "p2", "p3"}) {
    auto x = fan(name);
    const int n = static_cast<int>(x.num_rays());
    auto omitting = [&](int i) {
      std::vector<int> rays;
      for (int j = 0; j < n; ++j)
        if (j != i) rays.push_back(j);
      return cone(x, rays);
    };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        LinearForm expected(n);
        expected.coeffs[j] = 1;
        expected.coeffs[i] = -1;
        CHECK(weight(x, omitting(i), omitting(j)) == expected);
      }
  }
}

TEST_CASE("bundle weights") {
  for (long m : {2L, 3L}) {
    auto x = fan("bundle_m" + std::to_string(m));
    const int s1 = cone(x, {0, 2, 3}), s3 = cone(x, {0, 3, 4}), s4 = cone(x, {1, 2, 3});
    CHECK(weight(x, s1, s4) == LinearForm({1, -1, 0, 0, -m}));
    CHECK(weight(x, s1, s3) == LinearForm({0, 0, 1, 0, -1}));
    try {
      weight(x, s3, s4);
      FAIL("expected NotAdjacent");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotAdjacent);
    }
  }
}

TEST_CASE("class weights") {
  auto x = fan("bundle_m2");
  CHECK(class_weight(x, cone(x, {1, 3, 4}), mono(x, "Z1")).zero);
  auto unit = class_weight(x, cone(x, {1, 3, 4}), DivisorMonomial::unit(5));
  CHECK(!unit.zero);
  CHECK(unit.factors.empty());
  CHECK(unit.eval(fixtures::point({3, 5, 7, 11, 13})) == 1);

  auto p2 = fan("p2");
  auto cw = class_weight(p2, cone(p2, {0, 1}), mono(p2, "Z1"));
  REQUIRE(cw.factors.size() == 1);
  CHECK(cw.factors[0] == LinearForm({1, 0, -1}));
}

TEST_CASE("wall curve classes") {
  auto p2 = fan("p2");
  for (const auto& w : p2.walls()) CHECK(w.curve_class == CurveClass({1, 1, 1}));

  for (long m : {2L, 3L}) {
    auto x = fan("bundle_m" + std::to_string(m));
    auto upper = x.wall_between(cone(x, {1, 2, 3}), cone(x, {1, 2, 4}));
    auto side = x.wall_between(cone(x, {0, 2, 3}), cone(x, {1, 2, 3}));
    REQUIRE(upper);
    REQUIRE(side);
    CHECK(x.walls()[*upper].curve_class == CurveClass({0, -m, 1, 1, 1}));
    CHECK(x.walls()[*side].curve_class == CurveClass({1, 1, 0, 0, 0}));
  }
}

TEST_CASE("first Chern pairing") {
  for (long m : {2L, 3L}) {
    auto x = fan("bundle_m" + std::to_string(m));
    CurveClass l1 = fixtures::gen(x, {1, 0}), l2 = fixtures::gen(x, {0, 1});
    CHECK(first_chern_pairing(x, l1) == 2);
    CHECK(first_chern_pairing(x, l2) == 3 - m);
    CHECK(first_chern_pairing(x, CurveClass(IntVector(5, 0))) == 0);
    for (long a = 0; a < 4; ++a)
      for (long b = 0; b < 4; ++b)
        CHECK(first_chern_pairing(x, a * l1 + b * l2) ==
              a * first_chern_pairing(x, l1) + b * first_chern_pairing(x, l2));
  }
}

TEST_CASE("ampleness through primitive collections") {
  auto f1 = fan("f1");
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b) {
      std::vector<Rational> phi{0, 0, make_rational(a, 2), make_rational(b, 2)};
      CHECK(validate_ample(f1, phi) == (a > 0 && b > 0));
    }
  std::vector<Rational> zero(3, 0);
  CHECK_FALSE(validate_ample(fan("p2"), zero));
  std::vector<Rational> p2phi{0, 0, 1};
  CHECK(validate_ample(fan("p2"), p2phi));
  for (const auto& name : kAllFans) {
    auto x = fan(name);
    REQUIRE(x.input().ample);
    CHECK(validate_ample(x, *x.input().ample));
  }
}

TEST_CASE("classical integrals") {
  for (const char* name : {"bundle_m2", "bundle_m3"}) {
    auto x = fan(name);
    CHECK(classical_integral(x, mono(x, "Z1*Z3^2")) == 1);
    CHECK(classical_integral(x, mono(x, "Z3^2")) == 0);
    CHECK(classical_integral(x, mono(x, "Z1*Z2*Z3")) == 0);
  }
  auto x = fan("bundle_m3");
  CHECK(classical_integral(x, mono(x, "Z2^3")) == 9);
  CHECK(classical_integral(x, mono(x, "Z2^3")) == 9 * classical_integral(x, mono(x, "Z1*Z3^2")));
  auto p3 = fan("p3");
  CHECK(classical_integral(p3, mono(p3, "Z1^3")) == 1);
  CHECK(classical_integral(p3, mono(p3, "Z1*Z2*Z4")) == 1);
}

TEST_CASE("derived structures are exact on every fan") {
  for (const auto& name : kAllFans) {
    CAPTURE(name);
    auto x = fan(name);
    const auto& rays = x.input().rays;
    for (std::size_t s = 0; s < x.num_cones(); ++s) {
      const auto& cr = x.cone_rays(static_cast<int>(s));
      const auto& u = x.dual_basis(static_cast<int>(s));
      for (int a = 0; a < x.dim(); ++a)
        for (int b = 0; b < x.dim(); ++b) {
          long dot = 0;
          for (int k = 0; k < x.dim(); ++k) dot += rays[cr[a]][k] * u[b][k];
          CHECK(dot == (a == b ? 1 : 0));
        }
    }
    for (const auto& w : x.walls()) {
      CHECK(x.in_relation_lattice(w.curve_class));
      CHECK(w.curve_class.components[w.l1] == 1);
      CHECK(w.curve_class.components[w.l2] == 1);
      auto oracle = brute_force_wall_class(x, w);
      REQUIRE(oracle);
      CHECK(*oracle == w.curve_class);

      Wall swapped = w;
      std::swap(swapped.sigma1, swapped.sigma2);
      std::swap(swapped.l1, swapped.l2);
      CHECK(wall_curve_class(x, swapped) == w.curve_class);

      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto p = sample_point(x.num_rays(), seed);
        CHECK(eval(weight(x, w.sigma1, w.sigma2), p) + eval(weight(x, w.sigma2, w.sigma1), p) == 0);
      }
    }
  }
}

TEST_CASE("monomial parsing") {
  CHECK(parse_monomial("Z1*Z3^2", 5) == DivisorMonomial({1, 0, 2, 0, 0}));
  CHECK(parse_monomial("1", 5) == DivisorMonomial::unit(5));
  CHECK(parse_monomial("Z3*Z3", 5) == parse_monomial("Z3^2", 5));
  CHECK(to_string(parse_monomial("Z3^2*Z1", 5)) == "Z1*Z3^2");
  CHECK(parse_monomial("Z2^2", 5).degree() == 2);
  for (const char* bad : {"Z6", "Z0", "Z1*", "Y1", "Z1^", ""}) CHECK_THROWS_AS(parse_monomial(bad, 5), Error);
}
