#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "alex/laurent.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace alex;
using testutil::random_nonzero_poly;
using testutil::random_poly;

namespace {

LaurentPoly P1(const std::string& s) { return parse_laurent(s, 1); }
LaurentPoly P2(const std::string& s) { return parse_laurent(s, 2); }

// A unit of the integral Laurent ring: +-1 times a monomial.
LaurentPoly random_unit(std::mt19937& rng, int nvars) {
  std::uniform_int_distribution<int> ex(-3, 3);
  std::uniform_int_distribution<int> sg(0, 1);
  Exponent e(nvars);
  for (int v = 0; v < nvars; ++v) e[v] = ex(rng);
  return LaurentPoly::monomial(e, Rational(sg(rng) ? 1 : -1));
}

}  // namespace

TEST_CASE("construction and arithmetic basics") {
  LaurentPoly z = LaurentPoly::zero(2);
  CHECK(z.is_zero());
  CHECK(LaurentPoly::constant(2, 5).is_constant());
  LaurentPoly t = LaurentPoly::variable(1, 0);
  CHECK((t * t - t + LaurentPoly::constant(1, 1)) == P1("t^2 - t + 1"));
  CHECK((t - t).is_zero());
  CHECK(t.pow(0) == LaurentPoly::constant(1, 1));
  CHECK(LaurentPoly::variable(1, 0, -2) == P1("t^-2"));
  CHECK_THROWS(z.leading_term());
  CHECK_THROWS(z.min_exponents());
}

TEST_CASE("print and parse") {
  CHECK(print_laurent(P1("t^2 - t + 1")) == "t^2 - t + 1");
  CHECK(print_laurent(P2("t1^2*t2^-1 - 3*t1 + 1")) == "t1^2*t2^-1 - 3*t1 + 1");
  CHECK(print_laurent(LaurentPoly::zero(2)) == "0");
  CHECK(parse_laurent("0", 2).is_zero());
  CHECK(P1("-t") == -LaurentPoly::variable(1, 0));
  CHECK(P2("t2") == LaurentPoly::variable(2, 1));
  CHECK_THROWS_AS(parse_laurent("t3", 2), std::invalid_argument);

  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    int nv = 1 + (i % 3);
    LaurentPoly p = random_poly(rng, nv, 5, 4);
    CHECK(parse_laurent(print_laurent(p), nv) == p);
  }
}

TEST_CASE("canonicalize laws") {
  std::mt19937 rng(22);
  for (int i = 0; i < 1000; ++i) {
    int nv = 1 + (i % 3);
    LaurentPoly p = random_nonzero_poly(rng, nv, 5, 4);
    LaurentPoly c = canonicalize(p);
    REQUIRE(is_canonical(c));
    // Minimum exponent zero in every variable, positive leading coefficient.
    for (int v = 0; v < nv; ++v) REQUIRE(c.min_exponents()[v] == 0);
    REQUIRE(c.leading_term().second > 0);
    // Idempotent and invariant under unit (monomial) multiplication.
    REQUIRE(canonicalize(c) == c);
    REQUIRE(canonicalize(p * random_unit(rng, nv)) == c);
    REQUIRE(canonicalize(-p) == c);
  }
  CHECK(canonicalize(LaurentPoly::zero(2)).is_zero());
}

TEST_CASE("rational primitive") {
  CHECK(rational_primitive(P1("2*t^2 - 2")) == P1("t^2 - 1"));
  LaurentPoly half = P1("t - 1").scaled(Rational(1, 2));
  CHECK(rational_primitive(half) == P1("t - 1"));
  std::mt19937 rng(33);
  for (int i = 0; i < 300; ++i) {
    LaurentPoly p = random_nonzero_poly(rng, 2, 4, 3);
    LaurentPoly prim = rational_primitive(p);
    REQUIRE(prim.integral());
    REQUIRE(is_canonical(prim));
    // Invariant under nonzero rational scaling.
    Rational q(1 + (i % 5), 3);
    q.canonicalize();
    REQUIRE(rational_primitive(p.scaled(q)) == prim);
  }
}

TEST_CASE("gcd laws on random pairs") {
  CHECK(laurent_gcd(P1("t^2 - 1"), P1("t - 1")) == P1("t - 1"));
  std::mt19937 rng(44);
  for (int i = 0; i < 1000; ++i) {
    int nv = 1 + (i % 2);
    LaurentPoly a = random_poly(rng, nv, 4, 3);
    LaurentPoly b = random_poly(rng, nv, 4, 3);
    LaurentPoly g = laurent_gcd(a, b);
    REQUIRE(laurent_gcd(b, a) == g);
    if (a.is_zero() && b.is_zero()) {
      REQUIRE(g.is_zero());
      continue;
    }
    REQUIRE(!g.is_zero());
    REQUIRE(is_canonical(g));
    REQUIRE(laurent_divides(g, a));
    REQUIRE(laurent_divides(g, b));
    // Multiplicativity: gcd(ac, bc) = canonical(gcd(a, b) * c).
    LaurentPoly c = random_nonzero_poly(rng, nv, 3, 2);
    if (!c.integral()) continue;
    REQUIRE(laurent_gcd(a * c, b * c) == canonicalize(g * c));
  }
}

TEST_CASE("exact division") {
  CHECK(!laurent_divide(P1("1"), P1("t + 1")).has_value());
  CHECK(laurent_divide(P1("t^2 - 1"), P1("t - 1")).value() == P1("t + 1"));
  std::mt19937 rng(55);
  for (int i = 0; i < 500; ++i) {
    int nv = 1 + (i % 3);
    LaurentPoly a = random_poly(rng, nv, 4, 3);
    LaurentPoly b = random_nonzero_poly(rng, nv, 4, 3);
    auto q = laurent_divide(a * b, b);
    REQUIRE(q.has_value());
    REQUIRE(*q == a);
    REQUIRE(laurent_divides(b, a * b));
  }
}

TEST_CASE("degree spread") {
  CHECK(degree_spread(P1("t^2 - t + 1"), {1}) == 2);
  CHECK(degree_spread(P2("t1^3*t2^-1 + t2"), {1, 1}) == 1);
  CHECK(degree_spread(P2("t1*t2"), {1, -1}) == 0);
  CHECK(degree_spread(LaurentPoly::constant(2, 7), {1, 1}) == 0);
  CHECK_THROWS_AS(degree_spread(LaurentPoly::zero(1), {1}), std::invalid_argument);
  // Additive over products (extreme graded components cannot cancel).
  std::mt19937 rng(66);
  for (int i = 0; i < 500; ++i) {
    int nv = 1 + (i % 3);
    LaurentPoly a = random_nonzero_poly(rng, nv, 4, 3);
    LaurentPoly b = random_nonzero_poly(rng, nv, 4, 3);
    std::vector<long> dir(nv);
    std::uniform_int_distribution<long> d(-2, 2);
    for (auto& x : dir) x = d(rng);
    REQUIRE(degree_spread(a * b, dir) ==
            degree_spread(a, dir) + degree_spread(b, dir));
  }
}

TEST_CASE("specialization of variables") {
  CHECK(specialize_weights(P2("t1^2*t2^-1"), {2, 3}) == P1("t"));
  CHECK(specialize_weights(P2("t1 - t2"), {1, 1}).is_zero());
  std::mt19937 rng(77);
  for (int i = 0; i < 300; ++i) {
    LaurentPoly a = random_poly(rng, 2, 4, 3);
    LaurentPoly b = random_poly(rng, 2, 4, 3);
    std::vector<long> w = {1 + (i % 3), 1 - (i % 4)};
    REQUIRE(specialize_weights(a + b, w) ==
            specialize_weights(a, w) + specialize_weights(b, w));
    REQUIRE(specialize_weights(a * b, w) ==
            specialize_weights(a, w) * specialize_weights(b, w));
  }
}
