#include <random>
#include <string>

#include "doctest.h"

#include "qhfpt/errors.hpp"
#include "qhfpt/parse.hpp"

using namespace qhfpt;

namespace {
RingPtr xyz(u32 p) { return make_ring(p, {"x", "y", "z"}, {1, 1, 1}); }
} // namespace

TEST_CASE("basic parsing") {
  auto r = make_ring(7, {"x", "y"}, {2, 3});
  const Poly f = parse_poly("x*y^2 + x^4", r);
  REQUIRE(f.size() == 2);
  CHECK(f.coefficient_at(Monomial{1, 2}).value == 1);
  CHECK(f.coefficient_at(Monomial{4, 0}).value == 1);
  CHECK(parse_poly("-x", r).coefficient_at(Monomial{1, 0}).value == 6);
  CHECK(parse_poly("3*x*2", r).coefficient_at(Monomial{1, 0}).value == 6);
  CHECK(parse_poly("0", r).is_zero());
  CHECK(parse_poly("x^0", r) == Poly::constant(r, 1));
  CHECK(parse_poly("x*x", r) == parse_poly("x^2", r));
}

TEST_CASE("coefficients vanishing mod p produce warnings") {
  auto res = parse_poly_with_warnings("x^3+y^3+z^3+2*x*y*z", xyz(2));
  CHECK(res.poly.size() == 3);
  REQUIRE(res.warnings.size() == 1);
  CHECK(res.warnings[0] == "term 2*x*y*z ≡ 0 mod 2");
  auto cancel = parse_poly_with_warnings("x*y + 4*x*y", xyz(5));
  CHECK(cancel.poly.is_zero());
  CHECK(cancel.warnings.size() == 1);
  CHECK(parse_poly_with_warnings("x + 0", xyz(5)).warnings.empty());
}

TEST_CASE("syntax errors") {
  auto r = xyz(7);
  CHECK_THROWS_AS(parse_poly("x^-1", r), ParseError);
  CHECK_THROWS_AS(parse_poly("", r), ParseError);
  CHECK_THROWS_AS(parse_poly("x y", r), ParseError);
  CHECK_THROWS_AS(parse_poly("w", r), ParseError);
  CHECK_THROWS_AS(parse_poly("x^", r), ParseError);
  CHECK_THROWS_AS(parse_poly("x+", r), ParseError);
  CHECK_THROWS_AS(parse_poly("x^99999999999", r), ParseError);
  try {
    parse_poly("x + q", r);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("position 4") != std::string::npos);
  }
}

TEST_CASE("families") {
  auto r = xyz(7);
  const FamilyExpr e6 = parse_family("x^3+y^3+z^3+L*x*y*z", r, "L");
  CHECK(e6.base == parse_poly("x^3+y^3+z^3", r));
  CHECK(e6.parameter_term == parse_poly("x*y*z", r));
  CHECK(e6.specialize(2) == parse_poly("x^3+y^3+z^3+2*x*y*z", r));
  const FamilyExpr t = parse_family("x^2+y^3+z^7+L*x*y*z", r, "L");
  CHECK(t.base == parse_poly("x^2+y^3+z^7", r));
  CHECK(t.parameter_term == parse_poly("x*y*z", r));
  CHECK(parse_family("x + 3*L*y - L*z", r, "L").parameter_term == parse_poly("3*y - z", r));
  auto r2 = make_ring(7, {"x", "y"}, {1, 1});
  CHECK_THROWS_AS(parse_family("x^2+L^2*y", r2, "L"), HypothesisError);
  CHECK_THROWS_AS(parse_family("x^2+L*y", r2, "x"), HypothesisError);
}

TEST_CASE("format and parse round trip") {
  std::mt19937 rng(3);
  auto r = make_ring(11, {"x", "y", "z"}, {1, 2, 3});
  for (int i = 0; i < 100; ++i) {
    std::vector<std::pair<Monomial, u64>> terms;
    const int n = rng() % 6;
    for (int t = 0; t < n; ++t) terms.emplace_back(Monomial{static_cast<u32>(rng() % 5), static_cast<u32>(rng() % 5), static_cast<u32>(rng() % 5)}, rng());
    const Poly f = Poly::from_terms(r, terms);
    const std::string text = format_poly(f);
    CHECK(parse_poly(text, r) == f);
    CHECK(format_poly(parse_poly(text, r)) == text);
  }
  CHECK(format_poly(Poly(r)) == "0");
  CHECK(format_poly(parse_poly("2*x + x^4*y + 1", r)) == "x^4*y + 2*x + 1");
}
