#include <random>
#include <set>

#include "doctest.h"
#include "resolvent/error.hpp"
#include "resolvent/poly.hpp"
#include "test_support.hpp"

using namespace resolvent;
using resolvent::testing::P;

TEST_CASE("poly_arith examples") {
  auto R = PolyRing::make({"x", "y"});
  CHECK(poly_arith(P(R, "x + 1"), P(R, "x - 1"), ArithOp::Mul) == P(R, "x^2 - 1"));
  Poly p = P(R, "3*x*y - y^2 + 7");
  CHECK(poly_arith(p, Poly(R), ArithOp::Add) == p);
  CHECK(poly_arith(P(R, "1/2*x"), P(R, "2*y"), ArithOp::Mul) == P(R, "x*y"));
  CHECK(poly_arith(p, p, ArithOp::Sub).is_zero());
}

TEST_CASE("mismatched contexts are rejected") {
  auto R2 = PolyRing::make({"x", "y"});
  auto R3 = PolyRing::make({"x", "y", "z"});
  CHECK_THROWS_AS(poly_arith(P(R2, "x"), P(R3, "z"), ArithOp::Add), Error);
  try {
    poly_arith(P(R2, "x"), P(R3, "z"), ArithOp::Mul);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ContextMismatch);
  }
}

TEST_CASE("divide_multivariate examples") {
  auto R = PolyRing::make({"x", "y"}, MonomialOrder::lex());
  {
    std::vector<Poly> d{P(R, "x")};
    auto r = divide_multivariate(P(R, "x^2*y"), d, MonomialOrder::lex());
    CHECK(r.quotients[0] == P(R, "x*y"));
    CHECK(r.remainder.is_zero());
  }
  {
    std::vector<Poly> d{P(R, "x^2")};
    auto r = divide_multivariate(P(R, "x + y"), d, MonomialOrder::lex());
    CHECK(r.quotients[0].is_zero());
    CHECK(r.remainder == P(R, "x + y"));
  }
  {
    // hand division: x^2 + xy = x * (x + y)
    std::vector<Poly> d{P(R, "x + y")};
    auto r = divide_multivariate(P(R, "x^2 + x*y"), d, MonomialOrder::lex());
    CHECK(r.quotients[0] == P(R, "x"));
    CHECK(r.remainder.is_zero());
    CHECK(r.quotients[0] * d[0] + r.remainder == P(R, "x^2 + x*y"));
  }
  std::vector<Poly> none;
  CHECK_THROWS_AS(divide_multivariate(P(R, "x"), none, MonomialOrder::lex()), Error);
}

TEST_CASE("parse_poly examples") {
  std::vector<std::string> xy{"x", "y"};
  auto R = PolyRing::make(xy);
  CHECK(parse_poly("x^2 - 2*x*y + y^2", R) == P(R, "x - y").pow(2));
  Poly q = parse_poly("3/4", R);
  CHECK(q.is_constant());
  CHECK(q.constant_value() == Rational(3, 4));
  auto R3 = PolyRing::make({"x", "y", "z"});
  CHECK(parse_poly("x*(y + (z - 1))", R3) == P(R3, "x*y") + P(R3, "x*z") - P(R3, "x"));
  CHECK(parse_poly("-x^2", R) == -(P(R, "x") * P(R, "x")));
  CHECK(parse_poly("  6/4 *  x ", R) == P(R, "3/2*x"));
}

TEST_CASE("parse errors carry byte offsets") {
  auto R = PolyRing::make({"x", "y"});
  try {
    parse_poly("x + * y", R);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  try {
    parse_poly("x + q", R);
    FAIL("expected unknown variable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownVariable);
  }
  CHECK_THROWS_AS(parse_poly("(x + y", R), ParseError);
  CHECK_THROWS_AS(parse_poly("1/0", R), ParseError);
  CHECK_THROWS_AS(parse_poly("x^", R), ParseError);
}

TEST_CASE("canonical serialization follows the order and round-trips") {
  auto R = PolyRing::make({"x", "y", "z"});
  CHECK(P(R, "1 + z + y^2 + x*y + x*z^2").to_string() == "x*z^2 + x*y + y^2 + z + 1");
  auto L = PolyRing::make({"x", "y", "z"}, MonomialOrder::lex());
  CHECK(P(L, "1 + z + y^2 + x*y").to_string() == "x*y + y^2 + z + 1");
  CHECK(P(R, "-1/2*x + 3").to_string() == "-1/2*x + 3");
  CHECK(Poly(R).to_string() == "0");

  std::mt19937 rng(7);
  std::set<std::string> seen;
  std::vector<Poly> polys;
  for (int i = 0; i < 200; ++i) {
    Poly p = testing::random_poly(rng, R, 5, 3);
    CHECK(parse_poly(p.to_string(), R) == p);
    polys.push_back(p);
  }
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = i + 1; j < polys.size(); ++j)
      CHECK((polys[i] == polys[j]) == (polys[i].to_string() == polys[j].to_string()));
}

TEST_CASE("ring axioms hold on random triples") {
  auto R = PolyRing::make({"x", "y", "z"});
  std::mt19937 rng(11);
  for (int i = 0; i < 60; ++i) {
    Poly a = testing::random_poly(rng, R, 4, 3);
    Poly b = testing::random_poly(rng, R, 4, 3);
    Poly c = testing::random_poly(rng, R, 4, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == Poly(R));
  }
}

TEST_CASE("division reconstructs the dividend") {
  std::mt19937 rng(3);
  for (auto order : {MonomialOrder::lex(), MonomialOrder::grevlex(), MonomialOrder::block(1)}) {
    auto R = PolyRing::make({"x", "y", "z"}, order);
    for (int i = 0; i < 40; ++i) {
      Poly f = testing::random_poly(rng, R, 6, 4);
      std::vector<Poly> ds;
      while (ds.size() < 3) {
        Poly d = testing::random_poly(rng, R, 3, 2);
        if (!d.is_zero()) ds.push_back(d);
      }
      auto r = divide_multivariate(f, ds, order);
      Poly sum = r.remainder;
      for (std::size_t k = 0; k < ds.size(); ++k) sum += r.quotients[k] * ds[k];
      CHECK(sum == f);
      for (const auto& t : r.remainder.terms())
        for (const auto& d : ds) CHECK_FALSE(d.leading_monomial().divides(t.mono));
    }
  }
}

TEST_CASE("monomial orders") {
  Monomial a(std::vector<std::uint32_t>{1, 0, 2});
  Monomial b(std::vector<std::uint32_t>{0, 3, 0});
  CHECK(MonomialOrder::lex().compare(a, b) > 0);
  // grevlex: equal degree, the last differing exponent decides (smaller wins)
  CHECK(MonomialOrder::grevlex().compare(a, b) < 0);
  // block(1): first block x decides
  CHECK(MonomialOrder::block(1).compare(a, b) > 0);
  CHECK(MonomialOrder::grevlex().compare(a, a) == 0);
}

TEST_CASE("gcd") {
  auto R = PolyRing::make({"x", "y", "t"});
  CHECK(gcd(P(R, "x^2"), P(R, "x^3")) == P(R, "x^2"));
  CHECK(gcd(P(R, "x"), P(R, "y")).is_one());
  CHECK(gcd(P(R, "(x+y)*(x-t)^2"), P(R, "(x-t)*(y+1)*(x+y)")) == P(R, "(x+y)*(x-t)").monic());
  CHECK(gcd(P(R, "2*x*y"), P(R, "0")) == P(R, "x*y"));
  std::mt19937 rng(5);
  for (int i = 0; i < 25; ++i) {
    Poly a = testing::random_poly(rng, R, 3, 2);
    Poly b = testing::random_poly(rng, R, 3, 2);
    Poly c = testing::random_poly(rng, R, 3, 2);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    Poly g = gcd(a * c, b * c);
    CHECK(exact_divide(a * c, g).has_value());
    CHECK(exact_divide(b * c, g).has_value());
    CHECK(exact_divide(g, c.monic()).has_value());
  }
}

TEST_CASE("embed moves polynomials between rings") {
  auto R = PolyRing::make({"x", "y"});
  auto S = PolyRing::make({"a", "x", "y"});
  std::vector<std::size_t> map{1, 2};
  CHECK(embed(P(R, "x*y + 1"), S, map) == P(S, "x*y + 1"));
  std::vector<std::size_t> back{kNoVariable, 0, 1};
  CHECK_THROWS_AS(embed(P(S, "a + x"), R, back), Error);
}
